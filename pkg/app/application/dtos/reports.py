"""
Report DTOs

Results returned by the use cases and handed to the command layer for
printing and writing. Table columns carry SI units in their names.
"""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel

from app.domain.entities.decision import DecisionMatrix, TopsisResult
from app.domain.entities.engine import FlightCondition, PowerLedger, StationTable
from app.domain.entities.exergy import ExergyComponent, ExergyReport
from app.domain.entities.optimization import ObjectiveCase, OptimizationResult
from app.domain.entities.performance import CyclePerformance

UNIT_SUFFIXES = {
    "thrust": "_kN",
    "tsfc": "_g_per_kNs",
    "tsf": "_Ns_per_kg",
    "fuel_flow": "_kgps",
    "intake_mass_flow": "_kgps",
    "nox_rate": "_gps",
    "offtake": "_kW",
    "flight_speed": "_mps",
    "fuel_exergy_rate": "_kW",
    "intake_exergy_rate": "_kW",
    "jet_exergy_rate": "_kW",
    "exhaust_residual": "_kW",
    "total_destruction": "_kW",
    "entropy_generation": "_kW_per_K",
}

EXERGY_SCALARS = (
    "fuel_exergy_rate", "intake_exergy_rate", "jet_exergy_rate", "exhaust_residual",
    "total_destruction", "entropy_generation", "engine_eta_ex",
)


def with_unit(name: str) -> str:
    """Column header for a scalar, e.g. thrust -> thrust_kN"""
    if name.startswith("E_D_"):
        return f"{name}_kW"
    return name + UNIT_SUFFIXES.get(name, "")


def sweep_columns() -> List[str]:
    """Fixed column order of the sweep table"""
    columns = ["condition", "delta_T_K", "fuel"]
    columns += [with_unit(name) for name in CyclePerformance.model_fields]
    columns += [with_unit(name) for name in EXERGY_SCALARS]
    for component in ExergyComponent:
        columns += [f"eta_ex_{component.value}", with_unit(f"E_D_{component.value}")]
    columns.append("error")
    return columns


class SweepRow(BaseModel):
    """One (condition, delta_T, fuel) grid point; error is set when the cycle failed"""
    condition: str
    delta_T: float
    fuel: str
    values: Dict[str, Optional[float]] = {}
    error: Optional[str] = None

    model_config = {"frozen": True}

    @classmethod
    def from_results(cls, condition: str, delta_T: float, fuel: str,
                     performance: CyclePerformance, exergy: ExergyReport) -> "SweepRow":
        values = dict(performance.to_dict())
        values.update(exergy.summary())
        return cls(condition=condition, delta_T=delta_T, fuel=fuel, values=values)

    def to_record(self) -> dict:
        record = {"condition": self.condition, "delta_T_K": self.delta_T, "fuel": self.fuel}
        for name, value in self.values.items():
            record[with_unit(name)] = value
        record["error"] = self.error
        return record


class AnalysisReport(BaseModel):
    """
    Single-point analysis

    changes holds relative changes against the run at reference_delta_T
    (empty when no reference was requested or the run is the reference).
    """
    engine: str
    fuel: str
    condition: FlightCondition
    stations: StationTable
    ledger: PowerLedger
    performance: CyclePerformance
    exergy: ExergyReport
    reference_delta_T: Optional[float] = None
    changes: Dict[str, float] = {}

    model_config = {"frozen": True}

    def performance_rows(self) -> List[dict]:
        rows = [{"quantity": with_unit(k), "value": v} for k, v in self.performance.to_dict().items()]
        rows += [{"quantity": with_unit(k), "value": self.exergy.summary()[k]} for k in EXERGY_SCALARS]
        return rows

    def ledger_rows(self) -> List[dict]:
        return [{"component": k.replace("w_", ""), "power_kW": v} for k, v in self.ledger.model_dump().items()]

    def change_rows(self) -> List[dict]:
        return [{"quantity": k, "change_pct": 100.0 * v} for k, v in self.changes.items()]


class CaseOutcome(BaseModel):
    """GA result of one objective case and its grid cross-check"""
    case: ObjectiveCase
    ga: OptimizationResult
    grid: Optional[OptimizationResult] = None

    model_config = {"frozen": True}

    @property
    def label(self) -> str:
        return f"case{self.case.number}"

    def oracle_gap(self) -> Optional[float]:
        """Relative shortfall of the GA objective below the grid best"""
        if self.grid is None or self.grid.objective == 0:
            return None
        return (self.grid.objective - self.ga.objective) / abs(self.grid.objective)


class OptimizationReport(BaseModel):
    """Optimized cases next to the baseline engine"""
    baseline: CyclePerformance
    baseline_entropy_generation: float
    outcomes: Tuple[CaseOutcome, ...]

    model_config = {"frozen": True}

    @property
    def any_feasible(self) -> bool:
        return any(outcome.ga.feasible or (outcome.grid is not None and outcome.grid.feasible)
                   for outcome in self.outcomes)

    def results_by_label(self) -> Dict[str, OptimizationResult]:
        return {outcome.label: outcome.ga for outcome in self.outcomes}

    def comparison_rows(self) -> List[dict]:
        """One row per quantity: design variables then performance, baseline first"""
        columns = {"baseline": None}
        columns.update({outcome.label: outcome.ga for outcome in self.outcomes})
        quantities = ["TIT", "delta_T", "pi_fan", "pi_compressor", "alpha"]
        quantities += ["thrust", "tsfc", "eta_thermal", "eta_propulsive", "eta_overall",
                       "eta_exergetic", "tsf", "fuel_flow", "snox", "nox_rate", "entropy_generation"]
        rows = []
        for quantity in quantities:
            row = {"quantity": with_unit(quantity)}
            for label, result in columns.items():
                row[label] = self._value(result, quantity)
            rows.append(row)
        return rows

    def _value(self, result: Optional[OptimizationResult], quantity: str) -> Optional[float]:
        if result is None:
            if quantity == "entropy_generation":
                return self.baseline_entropy_generation
            if quantity in CyclePerformance.model_fields:
                return self.baseline.metric(quantity)
            return None
        summary = result.summary()
        return summary.get(quantity)


class RankReport(BaseModel):
    """TOPSIS ranking of one matrix under each weighting approach"""
    matrix: DecisionMatrix
    results: Dict[str, TopsisResult]

    model_config = {"frozen": True}

    def to_rows(self) -> List[dict]:
        rows = []
        for approach, result in self.results.items():
            rows += [{"approach": approach, **row} for row in result.to_rows()]
        return rows


class ValidationCheck(BaseModel):
    """
    One validation check

    Gating checks decide the exit status; informational ones only report the
    delta against a published value.
    """
    name: str
    passed: bool
    gating: bool = True
    computed: Optional[float] = None
    reference: Optional[float] = None
    tolerance: Optional[float] = None
    note: str = ""

    model_config = {"frozen": True}

    @property
    def delta(self) -> Optional[float]:
        if self.computed is None or self.reference is None or self.reference == 0:
            return None
        return (self.computed - self.reference) / abs(self.reference)

    def to_row(self) -> dict:
        return {
            "check": self.name,
            "status": "PASS" if self.passed else ("FAIL" if self.gating else "INFO"),
            "computed": self.computed,
            "reference": self.reference,
            "delta_pct": None if self.delta is None else 100.0 * self.delta,
            "tolerance": self.tolerance,
            "note": self.note,
        }


class ValidationReport(BaseModel):
    checks: Tuple[ValidationCheck, ...]

    model_config = {"frozen": True}

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks if check.gating)

    def failures(self) -> List[ValidationCheck]:
        return [check for check in self.checks if check.gating and not check.passed]

    def to_rows(self) -> List[dict]:
        return [check.to_row() for check in self.checks]
