"""
TOPSIS Decision Making

Ranks alternatives by relative closeness to the positive ideal using signed
weights: the sign marks benefit (+) or cost (-), the magnitude importance.
Zero-weight criteria take no part in the ranking.
"""

import logging
from typing import Dict, Iterable, List, Tuple

import numpy as np

from app.domain.entities.decision import DecisionMatrix, TopsisResult, WeightVector
from app.domain.entities.optimization import OptimizationResult
from app.domain.exceptions import DegenerateColumnError
from app.domain.reference_data import DECISION_CRITERIA

logger = logging.getLogger(__name__)


def normalize_matrix(matrix: DecisionMatrix) -> DecisionMatrix:
    """
    Euclidean (vector) normalization per criterion

    Raises:
        DegenerateColumnError: a criterion column is all zeros
    """
    values = matrix.as_array()
    norms = np.sqrt((values ** 2).sum(axis=0))
    for criterion, norm in zip(matrix.criteria, norms):
        if norm == 0:
            raise DegenerateColumnError(criterion)
    return matrix.with_values(values / norms)


def weight_and_ideal(
    normalized: DecisionMatrix, weights: WeightVector
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Weighted matrix and the positive/negative ideal solutions

    Args:
        normalized: Normalized matrix
        weights: Signed weights, one per criterion

    Returns:
        (weighted matrix, ideal_plus, ideal_minus) over the nonzero-weight criteria
    """
    w = weights.as_array()
    if len(w) != len(normalized.criteria):
        raise ValueError(
            f"{len(w)} weights given for {len(normalized.criteria)} criteria"
        )
    active = w != 0
    weighted = normalized.as_array()[:, active] * np.abs(w[active])
    benefit = w[active] > 0
    column_max = weighted.max(axis=0)
    column_min = weighted.min(axis=0)
    ideal_plus = np.where(benefit, column_max, column_min)
    ideal_minus = np.where(benefit, column_min, column_max)
    return weighted, ideal_plus, ideal_minus


def topsis_rank(matrix: DecisionMatrix, weights: WeightVector) -> TopsisResult:
    """
    Relative closeness and ranking

    Alternatives with both distances zero score 0.5; ties keep input order.
    """
    w = weights.as_array()
    if len(w) != len(matrix.criteria):
        raise ValueError(f"{len(w)} weights given for {len(matrix.criteria)} criteria")
    active = [i for i, value in enumerate(w) if value != 0]
    reduced = matrix.with_values(
        matrix.as_array()[:, active], criteria=[matrix.criteria[i] for i in active]
    )
    reduced_weights = WeightVector(weights=tuple(w[active]), name=weights.name)

    weighted, ideal_plus, ideal_minus = weight_and_ideal(normalize_matrix(reduced), reduced_weights)
    d_plus = np.sqrt(((weighted - ideal_plus) ** 2).sum(axis=1))
    d_minus = np.sqrt(((weighted - ideal_minus) ** 2).sum(axis=1))

    denominator = d_plus + d_minus
    safe = np.where(denominator > 0, denominator, 1.0)
    closeness = np.where(denominator > 0, d_minus / safe, 0.5)

    order = np.argsort(-closeness, kind="stable")
    ranking = tuple(matrix.alternatives[i] for i in order)
    logger.debug(f"TOPSIS ranking: {ranking}")
    return TopsisResult(
        alternatives=matrix.alternatives,
        closeness=tuple(float(c) for c in closeness),
        ranking=ranking,
        distance_plus=tuple(float(d) for d in d_plus),
        distance_minus=tuple(float(d) for d in d_minus),
    )


def criteria_from_results(
    results: Dict[str, OptimizationResult],
    criteria: Iterable[str] = DECISION_CRITERIA,
) -> DecisionMatrix:
    """
    Decision matrix from optimized cycles

    Criteria name CyclePerformance fields or ``entropy_generation`` from the
    exergy report.
    """
    criteria = tuple(criteria)
    rows: List[Tuple[float, ...]] = []
    for label, result in results.items():
        if result.performance is None or result.exergy is None:
            raise ValueError(f"result '{label}' has no closed cycle to score")
        row = []
        for name in criteria:
            if name == "entropy_generation":
                row.append(result.exergy.entropy_generation)
            else:
                row.append(result.performance.metric(name))
        rows.append(tuple(row))
    return DecisionMatrix(alternatives=tuple(results), criteria=criteria, values=tuple(rows))
