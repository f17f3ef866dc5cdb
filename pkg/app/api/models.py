"""
Run Configuration Models

One YAML file per run. Every section has complete defaults so that
``dump-defaults`` output re-parses to an identical RunConfig.
"""

from enum import Enum
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from app.domain.entities.decision import DecisionMatrix, WeightVector
from app.domain.entities.engine import EngineSpec, FlightCondition
from app.domain.entities.optimization import (
    Bounds,
    ConstraintSet,
    GAConfig,
    ObjectiveCase,
)
from app.domain.reference_data import (
    BOUNDS_PRESETS,
    CASE_CONSTRAINTS,
    DECISION_WEIGHTS,
    FLIGHT_CONDITIONS,
    ON_DESIGN,
    TAKE_OFF,
)

COMMANDS = ("analyze", "sweep", "optimize", "rank", "validate")


class OutputFormat(str, Enum):
    """Result file format"""
    CSV = "csv"
    JSON = "json"


def _flight_preset(v):
    """Resolve a preset name such as ``take_off`` to its FlightCondition"""
    if isinstance(v, str):
        key = v.strip().lower().replace("-", "_")
        if key not in FLIGHT_CONDITIONS:
            raise ValueError(f"unknown flight condition '{v}', expected one of {sorted(FLIGHT_CONDITIONS)}")
        return FLIGHT_CONDITIONS[key]
    return v


class SweepSection(BaseModel):
    """Inlet temperature change grid, fuels and flight conditions"""
    delta_T_start: float = -20.0
    delta_T_stop: float = 10.0
    delta_T_step: float = Field(5.0, gt=0)
    fuels: Tuple[str, ...] = ("JP10", "natural_gas", "hydrogen")
    conditions: Tuple[FlightCondition, ...] = ()

    model_config = {"frozen": True, "extra": "forbid"}

    @field_validator("conditions", mode="before")
    @classmethod
    def resolve_presets(cls, v):
        if isinstance(v, (list, tuple)):
            return tuple(_flight_preset(item) for item in v)
        return v

    @model_validator(mode="after")
    def check_range(self):
        if self.delta_T_stop < self.delta_T_start:
            raise ValueError("delta_T_stop must not be below delta_T_start")
        if not self.fuels:
            raise ValueError("at least one fuel is required")
        return self

    def delta_T_values(self) -> List[float]:
        """Grid from start to stop inclusive"""
        count = int((self.delta_T_stop - self.delta_T_start) / self.delta_T_step + 1e-9) + 1
        return [self.delta_T_start + i * self.delta_T_step for i in range(count)]


class OptimizeSection(BaseModel):
    """
    Optimization run

    case is an objective case name, 1/2/3, or ``all``. bounds is a preset name
    or an explicit box; constraints is ``case`` (published bands of each
    case), ``none``, or an explicit ConstraintSet.
    """
    case: str = "all"
    bounds: Union[str, Bounds] = "default"
    constraints: Union[str, ConstraintSet] = "case"
    ga: GAConfig = GAConfig()
    oracle_points: int = Field(7, ge=0, description="grid points per axis, 0 skips the oracle")
    fuel: str = "hydrogen"
    flight: FlightCondition = ON_DESIGN

    model_config = {"frozen": True, "extra": "forbid"}

    @field_validator("case", mode="before")
    @classmethod
    def check_case(cls, v):
        text = str(v).strip().lower()
        if text != "all":
            ObjectiveCase.parse(text)
        return text

    @field_validator("bounds")
    @classmethod
    def check_bounds_preset(cls, v):
        if isinstance(v, str) and v not in BOUNDS_PRESETS:
            raise ValueError(f"unknown bounds preset '{v}', expected one of {sorted(BOUNDS_PRESETS)}")
        return v

    @field_validator("constraints")
    @classmethod
    def check_constraints_preset(cls, v):
        if isinstance(v, str) and v not in ("case", "none"):
            raise ValueError("constraints must be 'case', 'none' or explicit bands")
        return v

    @field_validator("flight", mode="before")
    @classmethod
    def resolve_flight(cls, v):
        return _flight_preset(v)

    def cases(self) -> List[ObjectiveCase]:
        if self.case == "all":
            return list(ObjectiveCase)
        return [ObjectiveCase.parse(self.case)]

    def resolved_bounds(self) -> Bounds:
        return BOUNDS_PRESETS[self.bounds] if isinstance(self.bounds, str) else self.bounds

    def constraints_for(self, case: ObjectiveCase) -> ConstraintSet:
        if self.constraints == "case":
            return CASE_CONSTRAINTS[case]
        if self.constraints == "none":
            return ConstraintSet()
        return self.constraints


class RankSection(BaseModel):
    """
    TOPSIS ranking

    The matrix comes from optimization result files when ``results`` is set,
    else from ``matrix``, else from the published optima. Each approach is a
    weight preset name or an explicit WeightVector.
    """
    results: Tuple[str, ...] = ()
    matrix: Optional[DecisionMatrix] = None
    approaches: Tuple[Union[str, WeightVector], ...] = ("economic", "exero_environmental")

    model_config = {"frozen": True, "extra": "forbid"}

    @field_validator("approaches")
    @classmethod
    def check_presets(cls, v):
        for item in v:
            if isinstance(item, str) and item not in DECISION_WEIGHTS:
                raise ValueError(f"unknown weight preset '{item}', expected one of {sorted(DECISION_WEIGHTS)}")
        if not v:
            raise ValueError("at least one weighting approach is required")
        return v

    def weight_vectors(self) -> List[WeightVector]:
        return [DECISION_WEIGHTS[item] if isinstance(item, str) else item for item in self.approaches]


class ExergySection(BaseModel):
    verbatim_combustor: bool = False

    model_config = {"frozen": True, "extra": "forbid"}


class OutputSection(BaseModel):
    """Directory receiving result files and the main report format"""
    path: str = "results"
    format: OutputFormat = OutputFormat.JSON

    model_config = {"frozen": True, "extra": "forbid"}


class RunConfig(BaseModel):
    """
    Complete run configuration

    The command line picks which of the sweep/optimize/rank sections is
    active; analyze and validate use only the top-level fields.
    """
    engine: EngineSpec = EngineSpec()
    flight: FlightCondition = TAKE_OFF
    fuel: str = "JP10"
    fuel_file: Optional[str] = None
    reference_delta_T: Optional[float] = 0.0
    sweep: SweepSection = SweepSection()
    optimize: OptimizeSection = OptimizeSection()
    rank: RankSection = RankSection()
    exergy: ExergySection = ExergySection()
    output: OutputSection = OutputSection()

    model_config = {"frozen": True, "extra": "forbid"}

    @field_validator("flight", mode="before")
    @classmethod
    def resolve_flight(cls, v):
        return _flight_preset(v)

    def section_for(self, command: str) -> Optional[BaseModel]:
        """Section driving a command; None for commands without one"""
        if command not in COMMANDS:
            raise ValueError(f"unknown command '{command}'")
        return {"sweep": self.sweep, "optimize": self.optimize, "rank": self.rank}.get(command)

    def to_yaml_dict(self) -> dict:
        """Plain data for YAML output"""
        return self.model_dump(mode="json")
