"""
Validate Use Case

Runs the built-in engine against published reference values and the
physical trend and audit checks. Gating checks decide the exit status;
informational ones report deltas the calibrated model is known not to
reproduce.
"""

import logging
import math
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np

from app.application.dtos.reports import ValidationCheck, ValidationReport
from app.domain.entities.engine import EngineSpec, FlightCondition
from app.domain.entities.exergy import ExergyComponent, ExergyReport
from app.domain.entities.gas import Fuel
from app.domain.entities.optimization import ConstraintSet, GAConfig, ObjectiveCase
from app.domain.entities.performance import EmissionInputs
from app.domain.reference_data import (
    DECISION_WEIGHTS,
    DEFAULT_BOUNDS,
    GENX_1B70,
    HYDROGEN,
    JP10,
    NATURAL_GAS,
    ON_DESIGN,
    OPTIMIZATION_FUEL,
    PUBLISHED_CLOSENESS,
    PUBLISHED_OPTIMA_MATRIX,
    PUBLISHED_TARGETS,
    TAKE_OFF,
)
from app.domain.services.cycle import run_cycle
from app.domain.services.decision import topsis_rank
from app.domain.services.exergy import audit_cycle, specific_flow_exergy
from app.domain.services.gasmodel import isa_ambient
from app.domain.services.optimizer import ga_optimize, grid_search_oracle
from app.domain.services.performance import snox

logger = logging.getLogger(__name__)

TREND_DELTA_T = (-20.0, -15.0, -10.0, -5.0, 0.0, 5.0, 10.0)
BALANCE_TOLERANCE = 0.005
# Component destructions may dip below zero by rounding only
DESTRUCTION_FLOOR = -1e-6
CRUISE_INTAKE_NOTE = "cruise intake fixed by the cooled-inlet density; no calibration within range reaches it"


def _within(name: str, computed: float, reference: float, tolerance: float,
            gating: bool = True, note: str = "") -> ValidationCheck:
    passed = abs(computed - reference) <= tolerance * abs(reference)
    return ValidationCheck(name=name, passed=passed, gating=gating, computed=computed,
                           reference=reference, tolerance=tolerance, note=note)


def _flag(name: str, passed: bool, gating: bool = True, computed: Optional[float] = None,
          note: str = "") -> ValidationCheck:
    return ValidationCheck(name=name, passed=bool(passed), gating=gating, computed=computed, note=note)


def _strictly(values: List[float], increasing: bool) -> bool:
    steps = np.diff(values)
    return bool(np.all(steps > 0) if increasing else np.all(steps < 0))


class _Runner:
    """Cycle evaluations shared between checks"""

    def __init__(self, spec: EngineSpec):
        self.spec = spec
        self._cache: Dict[tuple, tuple] = {}

    def run(self, condition: FlightCondition, fuel: Fuel, delta_T: float = 0.0):
        key = (condition.name, fuel.name, delta_T)
        if key not in self._cache:
            solution = run_cycle(self.spec, condition.with_delta_T(delta_T), fuel)
            self._cache[key] = (solution, audit_cycle(solution))
        return self._cache[key]


def reference_checks(runner: _Runner) -> List[ValidationCheck]:
    t = PUBLISHED_TARGETS
    take_off, _ = runner.run(TAKE_OFF, JP10)
    cruise, _ = runner.run(ON_DESIGN, JP10)
    h2, h2_exergy = runner.run(ON_DESIGN, HYDROGEN)
    perf = h2.performance
    return [
        _within("take-off thrust (kN)", take_off.performance.thrust, t["take_off_thrust_kN"], 0.05),
        _within("take-off TSFC (g/kNs)", take_off.performance.tsfc, t["take_off_tsfc"], 0.12),
        _within("on-design thrust (kN)", cruise.performance.thrust, t["on_design_thrust_kN"], 0.08,
                gating=False, note=CRUISE_INTAKE_NOTE),
        _within("on-design TSFC (g/kNs)", cruise.performance.tsfc, t["on_design_tsfc"], 0.12),
        _within("hydrogen thrust (kN)", perf.thrust, t["hydrogen_thrust_kN"], 0.10,
                gating=False, note=CRUISE_INTAKE_NOTE),
        _within("hydrogen TSFC (g/kNs)", perf.tsfc, t["hydrogen_tsfc"], 0.10),
        _flag("overall efficiency identity",
              abs(perf.eta_overall - perf.eta_thermal * perf.eta_propulsive) <= 1e-12,
              computed=abs(perf.eta_overall - perf.eta_thermal * perf.eta_propulsive)),
        _within("hydrogen thermal efficiency", perf.eta_thermal, t["hydrogen_eta_thermal"], 0.10,
                gating=False, note="published value not reachable with an energy-consistent kinetic term"),
        _within("hydrogen propulsive efficiency", perf.eta_propulsive, t["hydrogen_eta_propulsive"], 0.10,
                gating=False, note="published value not reachable with an energy-consistent kinetic term"),
        _within("hydrogen exergetic efficiency", perf.eta_exergetic, t["hydrogen_eta_exergetic"], 0.10,
                gating=False),
        _within("hydrogen entropy generation (kW/K)", h2_exergy.entropy_generation,
                t["hydrogen_entropy_generation"], 0.10, gating=False),
        _within("hydrogen NOx rate (g/s)", perf.nox_rate, t["hydrogen_nox_rate"], 0.10, gating=False),
    ]


def trend_checks(runner: _Runner) -> List[ValidationCheck]:
    checks = []
    for condition in (TAKE_OFF, ON_DESIGN):
        runs = [runner.run(condition, JP10, dT) for dT in TREND_DELTA_T]
        series = {
            name: [solution.performance.metric(name) for solution, _ in runs]
            for name in ("intake_mass_flow", "thrust", "fuel_flow", "snox")
        }
        label = condition.name
        checks += [
            _flag(f"{label}: intake mass flow falls with inlet temperature",
                  _strictly(series["intake_mass_flow"], increasing=False)),
            _flag(f"{label}: thrust falls with inlet temperature", _strictly(series["thrust"], increasing=False)),
            _flag(f"{label}: fuel flow falls with inlet temperature",
                  _strictly(series["fuel_flow"], increasing=False)),
            _flag(f"{label}: SNOx rises with inlet temperature", _strictly(series["snox"], increasing=True)),
        ]
        if condition is ON_DESIGN:
            s_gen = [exergy.entropy_generation for _, exergy in runs]
            eta_ex = [exergy.engine_eta_ex for _, exergy in runs]
            checks += [
                _flag(f"{label}: entropy generation falls with inlet temperature", _strictly(s_gen, False)),
                _flag(f"{label}: exergetic efficiency rises with inlet temperature", _strictly(eta_ex, True)),
            ]
    return checks


def cooling_checks(runner: _Runner) -> List[ValidationCheck]:
    cooled, _ = runner.run(ON_DESIGN, JP10, -20.0)
    base, _ = runner.run(ON_DESIGN, JP10, 0.0)

    def change(name: str) -> float:
        return (cooled.performance.metric(name) - base.performance.metric(name)) / base.performance.metric(name)

    thrust_change, fuel_change, snox_change = change("thrust"), change("fuel_flow"), change("snox")
    t = PUBLISHED_TARGETS
    return [
        ValidationCheck(name="cooling by 20 K: thrust change", passed=0.09 <= thrust_change <= 0.14,
                        computed=thrust_change, reference=t["cooling_thrust_change"], note="band [9%, 14%]"),
        ValidationCheck(name="cooling by 20 K: fuel flow change", passed=0.08 <= fuel_change <= 0.13,
                        gating=False, computed=fuel_change, reference=t["cooling_fuel_flow_change"],
                        note="band [8%, 13%]; cooled intake also lowers the compressor exit temperature"),
        _flag("cooling by 20 K: SNOx change negative", snox_change < 0, computed=snox_change),
    ]


def _audit_sound(exergy: ExergyReport) -> bool:
    return (
        all(r.destruction >= DESTRUCTION_FLOOR for r in exergy.per_component)
        and exergy.balance_error() <= BALANCE_TOLERANCE
    )


def exergy_checks(runner: _Runner) -> List[ValidationCheck]:
    checks = []
    for condition in (TAKE_OFF, ON_DESIGN):
        for fuel in (JP10, NATURAL_GAS, HYDROGEN):
            _, exergy = runner.run(condition, fuel)
            checks.append(_flag(
                f"{condition.name}, {fuel.name}: exergy audit sound", _audit_sound(exergy),
                computed=exergy.balance_error(), note="destructions >= 0, balance within 0.5%",
            ))
    _, baseline = runner.run(ON_DESIGN, JP10)
    checks.append(_flag(
        "combustor has the largest destruction",
        baseline.largest_destruction().component == ExergyComponent.COMBUSTOR,
        computed=baseline.component(ExergyComponent.COMBUSTOR).destruction,
    ))
    sound = all(_audit_sound(runner.run(ON_DESIGN, JP10, dT)[1]) for dT in TREND_DELTA_T)
    checks.append(_flag("exergy audit sound over the cooling sweep", sound))
    return checks


def fuel_checks(runner: _Runner) -> List[ValidationCheck]:
    runs = {fuel.name: runner.run(ON_DESIGN, fuel) for fuel in (JP10, NATURAL_GAS, HYDROGEN)}
    flow = {name: solution.fuel_flow for name, (solution, _) in runs.items()}
    s_gen = {name: exergy.entropy_generation for name, (_, exergy) in runs.items()}
    return [
        _flag("fuel flow: hydrogen < natural gas < JP10",
              flow["hydrogen"] < flow["natural_gas"] < flow["JP10"]),
        _flag("entropy generation: hydrogen > natural gas > JP10",
              s_gen["hydrogen"] > s_gen["natural_gas"] > s_gen["JP10"]),
    ]


def point_checks() -> List[ValidationCheck]:
    reference = math.exp(6.29 / 53.2)
    computed = snox(EmissionInputs(P4=2965.0, T4=826.0, war=0.0))
    ambient = isa_ambient(0.0)
    dead = specific_flow_exergy(ambient.T0, ambient.P0, ambient, GENX_1B70.gas_props.diffuser)
    return [
        _flag("SNOx at the reference point", abs(computed - reference) <= 1e-9, computed=computed),
        _flag("physical exergy at the dead state", dead == 0.0, computed=dead),
    ]


def topsis_checks() -> List[ValidationCheck]:
    economic = topsis_rank(PUBLISHED_OPTIMA_MATRIX, DECISION_WEIGHTS["economic"])
    exero = topsis_rank(PUBLISHED_OPTIMA_MATRIX, DECISION_WEIGHTS["exero_environmental"])
    checks = [
        _flag("economic ranking case1 > case2 > case3", economic.ranking == ("case1", "case2", "case3"),
              note=" > ".join(economic.ranking)),
        _flag("exero-environmental ranking: case3 first, case2 last",
              exero.ranking[0] == "case3" and exero.ranking[-1] == "case2", note=" > ".join(exero.ranking)),
    ]
    for approach, result in (("economic", economic), ("exero_environmental", exero)):
        for alternative, published in PUBLISHED_CLOSENESS[approach].items():
            score = result.score(alternative)
            checks.append(ValidationCheck(
                name=f"{approach} closeness of {alternative}", passed=abs(score - published) <= 0.15,
                gating=False, computed=score, reference=published, tolerance=0.15,
                note="absolute tolerance",
            ))
    return checks


def optimization_checks(
    spec: EngineSpec,
    cfg: GAConfig,
    oracle_points: int,
    map_fn: Optional[Callable[[Callable, Iterable], Iterable]] = None,
) -> List[ValidationCheck]:
    """
    GA against the grid oracle and optimized cases against the baseline

    Unconstrained hydrogen runs at the on-design point over the default box.
    An oracle_points of 0 skips the oracle comparison.
    """
    runs = {}
    checks = []
    for case in ObjectiveCase:
        ga = ga_optimize(case, DEFAULT_BOUNDS, ConstraintSet(), cfg, template=spec,
                         fuel=OPTIMIZATION_FUEL, map_fn=map_fn)
        runs[case] = ga
        if oracle_points > 0:
            grid = grid_search_oracle(case, DEFAULT_BOUNDS, ConstraintSet(), oracle_points, template=spec,
                                      fuel=OPTIMIZATION_FUEL, map_fn=map_fn)
            floor = grid.objective - 0.01 * abs(grid.objective)
            checks.append(ValidationCheck(
                name=f"{case.value}: GA reaches the grid oracle", passed=ga.objective >= floor,
                computed=ga.objective, reference=grid.objective, tolerance=0.01,
                note=f"oracle {oracle_points} points per axis",
            ))

    again = ga_optimize(ObjectiveCase.THRUST_MAX, DEFAULT_BOUNDS, ConstraintSet(), cfg, template=spec,
                        fuel=OPTIMIZATION_FUEL, map_fn=map_fn)
    checks.append(_flag(f"GA seed {cfg.seed} reproduces the run", again == runs[ObjectiveCase.THRUST_MAX]))

    baseline = run_cycle(spec, ON_DESIGN, OPTIMIZATION_FUEL).performance

    def at_least(name: str, case: ObjectiveCase, metric: str, floor: float) -> ValidationCheck:
        performance = runs[case].performance
        value = performance.metric(metric) if performance is not None else None
        return _flag(name, value is not None and value >= floor, computed=value, note=f"floor {floor:.4g}")

    checks += [
        at_least("thrust case: thrust at least 1.10 x baseline",
                 ObjectiveCase.THRUST_MAX, "thrust", 1.10 * baseline.thrust),
        at_least("thermal case: thermal efficiency not below baseline",
                 ObjectiveCase.THERMAL_EFFICIENCY_MAX, "eta_thermal", baseline.eta_thermal),
        at_least("propulsive case: propulsive efficiency at least baseline + 0.08",
                 ObjectiveCase.PROPULSIVE_EFFICIENCY_MAX, "eta_propulsive", baseline.eta_propulsive + 0.08),
    ]
    return checks


def run_validation(
    spec: EngineSpec = GENX_1B70,
    optimization: Optional[GAConfig] = None,
    oracle_points: int = 7,
    map_fn: Optional[Callable[[Callable, Iterable], Iterable]] = None,
) -> ValidationReport:
    """
    Execute every check against the given engine

    Args:
        spec: Engine under test
        optimization: GA settings; the optimization checks run only when given
        oracle_points: Grid points per axis of the oracle
        map_fn: Parallel map for the optimization runs
    """
    runner = _Runner(spec)
    checks: List[ValidationCheck] = []
    for group in (reference_checks, trend_checks, cooling_checks, exergy_checks, fuel_checks):
        checks += group(runner)
    checks += point_checks()
    checks += topsis_checks()
    if optimization is not None:
        checks += optimization_checks(spec, optimization, oracle_points, map_fn)

    report = ValidationReport(checks=tuple(checks))
    for check in checks:
        if not check.passed:
            log = logger.error if check.gating else logger.warning
            log(f"{'FAIL' if check.gating else 'INFO'} {check.name}: computed {check.computed}, reference {check.reference}")
    logger.info(f"Validation {'passed' if report.passed else 'failed'}: "
                f"{sum(c.passed for c in checks)}/{len(checks)} checks met")
    return report
