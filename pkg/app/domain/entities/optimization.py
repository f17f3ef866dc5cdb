"""
Optimization Domain Entities

Design vector, search box, objective cases, constraint bands, GA settings and
results.
"""

from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from app.domain.entities.exergy import ExergyReport
from app.domain.entities.performance import CyclePerformance

DESIGN_FIELDS = ("TIT", "delta_T", "pi_fan", "pi_compressor", "alpha")


class DesignVector(BaseModel):
    """The five free design variables"""
    TIT: float
    delta_T: float
    pi_fan: float
    pi_compressor: float
    alpha: float

    model_config = {"frozen": True}

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in DESIGN_FIELDS], dtype=float)

    @classmethod
    def from_array(cls, values) -> "DesignVector":
        return cls(**{name: float(v) for name, v in zip(DESIGN_FIELDS, values)})


class Bounds(BaseModel):
    """Box constraints on the design vector"""
    lower: DesignVector
    upper: DesignVector

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def check_order(self):
        for name in DESIGN_FIELDS:
            if not getattr(self.lower, name) < getattr(self.upper, name):
                raise ValueError(f"bounds for {name}: lower must be below upper")
        return self

    @property
    def lower_array(self) -> np.ndarray:
        return self.lower.as_array()

    @property
    def upper_array(self) -> np.ndarray:
        return self.upper.as_array()

    @property
    def span(self) -> np.ndarray:
        return self.upper_array - self.lower_array

    def midpoint(self) -> DesignVector:
        return DesignVector.from_array(0.5 * (self.lower_array + self.upper_array))

    def contains(self, design: DesignVector) -> bool:
        x = design.as_array()
        return bool(np.all(x >= self.lower_array) and np.all(x <= self.upper_array))

    def clip(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower_array, self.upper_array)


class ObjectiveCase(str, Enum):
    """Single-objective optimization cases"""
    THRUST_MAX = "thrust_max"
    THERMAL_EFFICIENCY_MAX = "thermal_efficiency_max"
    PROPULSIVE_EFFICIENCY_MAX = "propulsive_efficiency_max"

    @property
    def metric(self) -> str:
        """CyclePerformance field being maximized"""
        return {
            ObjectiveCase.THRUST_MAX: "thrust",
            ObjectiveCase.THERMAL_EFFICIENCY_MAX: "eta_thermal",
            ObjectiveCase.PROPULSIVE_EFFICIENCY_MAX: "eta_propulsive",
        }[self]

    @property
    def scale(self) -> float:
        """Typical magnitude of the objective (kN for thrust, 1 for efficiencies)"""
        return 100.0 if self is ObjectiveCase.THRUST_MAX else 1.0

    @property
    def number(self) -> int:
        return list(ObjectiveCase).index(self) + 1

    @classmethod
    def parse(cls, value) -> "ObjectiveCase":
        """Accept the enum value, 1/2/3 or 'case1'..'case3'"""
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().replace("case", "").replace("-", "_")
        if text.isdigit():
            index = int(text) - 1
            if 0 <= index < len(cls):
                return list(cls)[index]
        return cls(text)


CONSTRAINED_METRICS = ("eta_thermal", "tsfc", "eta_propulsive", "tsf")


class ConstraintBand(BaseModel):
    """Closed interval [minimum, maximum] on one performance metric"""
    minimum: float
    maximum: float

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def check_order(self):
        if not self.minimum < self.maximum:
            raise ValueError("constraint band minimum must be below maximum")
        return self

    def violation(self, value: float) -> float:
        """Distance outside the band, normalized by the band width"""
        width = self.maximum - self.minimum
        if value < self.minimum:
            return (self.minimum - value) / width
        if value > self.maximum:
            return (value - self.maximum) / width
        return 0.0


class ConstraintSet(BaseModel):
    """Bands keyed by CyclePerformance metric name"""
    bands: Dict[str, ConstraintBand] = Field(default_factory=dict)

    model_config = {"frozen": True}

    @field_validator("bands")
    @classmethod
    def check_metrics(cls, v):
        unknown = set(v) - set(CONSTRAINED_METRICS)
        if unknown:
            raise ValueError(f"unsupported constraint metrics: {sorted(unknown)}")
        return v

    def total_violation(self, performance: CyclePerformance) -> float:
        return sum(band.violation(performance.metric(name)) for name, band in self.bands.items())

    def is_satisfied(self, performance: CyclePerformance) -> bool:
        return self.total_violation(performance) == 0.0


class GAConfig(BaseModel):
    """
    Genetic algorithm settings

    penalty_weight defaults to ten times the objective scale when omitted.
    """
    population_size: int = Field(100, ge=10)
    generations: int = Field(200, ge=1)
    crossover_rate: float = Field(0.9, ge=0, le=1)
    mutation_rate: float = Field(0.1, ge=0, le=1)
    mutation_sigma: float = Field(0.05, gt=0, description="fraction of the variable range")
    blend_alpha: float = Field(0.25, ge=0)
    tournament_size: int = Field(3, ge=2)
    elite_count: int = Field(1, ge=1)
    penalty_weight: Optional[float] = Field(None, gt=0)
    seed: int = 42

    model_config = {"frozen": True}

    def penalty_for(self, case: ObjectiveCase) -> float:
        return self.penalty_weight if self.penalty_weight is not None else 10.0 * case.scale


class DesignEvaluation(BaseModel):
    """Outcome of evaluating one design vector"""
    design: DesignVector
    fitness: float
    objective: float
    violation: float
    feasible: bool
    performance: Optional[CyclePerformance] = None
    exergy: Optional[ExergyReport] = None
    error: Optional[str] = None

    model_config = {"frozen": True}


class OptimizationResult(BaseModel):
    """
    Best design found by a search

    Attributes:
        method: "ga" or "grid"
        feasible: True only when every constraint band holds
        history: Best fitness per generation (GA) or the final best (grid)
    """
    case: Optional[ObjectiveCase] = None
    method: str
    best: DesignVector
    performance: Optional[CyclePerformance] = None
    exergy: Optional[ExergyReport] = None
    feasible: bool
    fitness: float
    objective: float
    violation: float
    history: Tuple[float, ...] = ()
    evaluations: int = 0
    seed: Optional[int] = None

    model_config = {"frozen": True}

    def summary(self) -> dict:
        """Flat record for tables"""
        row = {"case": self.case.value if self.case else None, "method": self.method, "feasible": self.feasible,
               "fitness": self.fitness, "objective": self.objective, "violation": self.violation}
        row.update(self.best.model_dump())
        if self.performance is not None:
            row.update(self.performance.to_dict())
        if self.exergy is not None:
            row["entropy_generation"] = self.exergy.entropy_generation
        return row
