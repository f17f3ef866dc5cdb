"""
Decision Entities

Decision matrix, signed weights and TOPSIS result.
"""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, model_validator


class DecisionMatrix(BaseModel):
    """
    Alternatives (rows) scored on criteria (columns)

    Attributes:
        alternatives: Row labels
        criteria: Column labels
        values: len(alternatives) x len(criteria) scores
    """
    alternatives: Tuple[str, ...]
    criteria: Tuple[str, ...]
    values: Tuple[Tuple[float, ...], ...]

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.alternatives) < 1 or len(self.criteria) < 1:
            raise ValueError("decision matrix needs at least one alternative and one criterion")
        if len(set(self.alternatives)) != len(self.alternatives):
            raise ValueError(f"alternative labels must be unique, got {list(self.alternatives)}")
        if len(set(self.criteria)) != len(self.criteria):
            raise ValueError(f"criterion names must be unique, got {list(self.criteria)}")
        if len(self.values) != len(self.alternatives):
            raise ValueError("one row of values per alternative is required")
        for row in self.values:
            if len(row) != len(self.criteria):
                raise ValueError("one value per criterion is required in every row")
        return self

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def with_values(self, values: np.ndarray, criteria: Optional[List[str]] = None) -> "DecisionMatrix":
        return DecisionMatrix(
            alternatives=self.alternatives,
            criteria=tuple(criteria) if criteria is not None else self.criteria,
            values=tuple(tuple(float(v) for v in row) for row in np.asarray(values)),
        )


class WeightVector(BaseModel):
    """
    Signed criterion weights

    The sign marks a benefit (+) or cost (-) criterion, the magnitude its importance.
    """
    weights: Tuple[float, ...]
    name: Optional[str] = None

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def check_nonzero(self):
        if not any(w != 0 for w in self.weights):
            raise ValueError("at least one weight must be nonzero")
        return self

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)


class TopsisResult(BaseModel):
    """Relative closeness per alternative and the resulting order"""
    alternatives: Tuple[str, ...]
    closeness: Tuple[float, ...]
    ranking: Tuple[str, ...]
    distance_plus: Tuple[float, ...]
    distance_minus: Tuple[float, ...]

    model_config = {"frozen": True}

    def score(self, alternative: str) -> float:
        return self.closeness[self.alternatives.index(alternative)]

    def to_rows(self) -> List[dict]:
        """Rank-ordered rows"""
        rows = []
        for rank, name in enumerate(self.ranking, start=1):
            i = self.alternatives.index(name)
            rows.append({
                "rank": rank,
                "alternative": name,
                "closeness": self.closeness[i],
                "d_plus": self.distance_plus[i],
                "d_minus": self.distance_minus[i],
            })
        return rows
