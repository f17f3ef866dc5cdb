"""
Rank Use Case

TOPSIS ranking of optimized cases under one or more weighting approaches.
"""

import logging
from pathlib import Path
from typing import Callable, Dict, Iterable, Optional

from pydantic import ValidationError

from app.api.models import RunConfig
from app.application.dtos.reports import OptimizationReport, RankReport
from app.domain.entities.decision import DecisionMatrix
from app.domain.entities.optimization import OptimizationResult
from app.domain.exceptions import ConfigError
from app.domain.reference_data import PUBLISHED_OPTIMA_MATRIX
from app.domain.services.decision import criteria_from_results, topsis_rank
from app.infrastructure.persistence.result_repository_impl import FileResultRepository

logger = logging.getLogger(__name__)


def load_results(
    paths: Iterable[str], read_json: Callable[[str], dict]
) -> Dict[str, OptimizationResult]:
    """
    GA results of saved optimize reports, labelled case1..case3

    Labels are prefixed with the file stem when several files are given.
    """
    paths = list(paths)
    results: Dict[str, OptimizationResult] = {}
    for path in paths:
        try:
            report = OptimizationReport.model_validate(read_json(path))
        except (OSError, ValueError, ValidationError) as e:
            raise ConfigError(f"cannot read optimization results {path}: {e}", field="rank.results")
        prefix = f"{Path(path).stem}:" if len(paths) > 1 else ""
        for label, result in report.results_by_label().items():
            results[prefix + label] = result
    return results


def decision_matrix(config: RunConfig, read_json: Callable[[str], dict]) -> DecisionMatrix:
    """Matrix from result files, else the inline matrix, else the published optima"""
    section = config.rank
    if section.results:
        try:
            return criteria_from_results(load_results(section.results, read_json))
        except ValueError as e:
            raise ConfigError(str(e), field="rank.results")
    if section.matrix is not None:
        return section.matrix
    logger.info("Ranking the published optima matrix")
    return PUBLISHED_OPTIMA_MATRIX


def run_rank(config: RunConfig, read_json: Optional[Callable[[str], dict]] = None) -> RankReport:
    """
    Rank under every configured weighting approach

    Raises:
        DegenerateColumnError: an active criterion column is all zeros
        ConfigError: unreadable result files or mismatched weights
    """
    matrix = decision_matrix(config, read_json or FileResultRepository.load_json)
    results = {}
    for weights in config.rank.weight_vectors():
        if len(weights.weights) != len(matrix.criteria):
            raise ConfigError(
                f"{len(weights.weights)} weights for {len(matrix.criteria)} criteria",
                field="rank.approaches",
            )
        result = topsis_rank(matrix, weights)
        logger.info(f"{weights.name or 'custom'} ranking: {' > '.join(result.ranking)}")
        results[weights.name or f"approach{len(results) + 1}"] = result
    return RankReport(matrix=matrix, results=results)
