"""
Sweep Use Case

Inlet temperature change and fuel sweep. Grid points are independent and may
run in worker processes; a failing point becomes a row with an error and
the sweep goes on.
"""

import logging
from typing import Callable, Iterable, List, Optional, Tuple

from app.api.models import RunConfig
from app.application.dtos.reports import SweepRow
from app.domain.entities.engine import EngineSpec, FlightCondition
from app.domain.entities.gas import Fuel
from app.domain.exceptions import CycleToolError
from app.domain.repositories.fuel_repository import IFuelRepository
from app.domain.services.cycle import run_cycle
from app.domain.services.exergy import audit_cycle
from app.domain.services.gasmodel import fuel_lookup

logger = logging.getLogger(__name__)

SweepTask = Tuple[EngineSpec, FlightCondition, Fuel, bool]


def condition_label(condition: FlightCondition) -> str:
    return condition.name or f"mach_{condition.mach:g}_alt_{condition.altitude:g}"


def sweep_point(task: SweepTask) -> SweepRow:
    """Evaluate one grid point; module level so worker processes can import it"""
    spec, condition, fuel, verbatim = task
    label = condition_label(condition)
    try:
        solution = run_cycle(spec, condition, fuel)
        exergy = audit_cycle(solution, verbatim_combustor=verbatim)
    except (CycleToolError, ValueError, ArithmeticError) as e:
        logger.warning(f"Sweep point {label}, {fuel.name}, delta_T {condition.delta_T} K failed: {e}")
        return SweepRow(condition=label, delta_T=condition.delta_T, fuel=fuel.name, error=str(e))
    return SweepRow.from_results(label, condition.delta_T, fuel.name, solution.performance, exergy)


def sweep_tasks(config: RunConfig, fuels: Optional[IFuelRepository] = None) -> List[SweepTask]:
    """Grid points ordered by condition, then fuel, then delta_T"""
    section = config.sweep
    conditions = section.conditions or (config.flight,)
    resolved = [fuel_lookup(name, fuels) for name in section.fuels]
    verbatim = config.exergy.verbatim_combustor
    return [
        (config.engine, condition.with_delta_T(delta_T), fuel, verbatim)
        for condition in conditions
        for fuel in resolved
        for delta_T in section.delta_T_values()
    ]


def run_sweep(
    config: RunConfig,
    fuels: Optional[IFuelRepository] = None,
    map_fn: Optional[Callable[[Callable, Iterable], Iterable]] = None,
) -> List[SweepRow]:
    """
    Evaluate the whole sweep grid

    Raises:
        FuelNotFoundError: a configured fuel is unknown (before any evaluation)
    """
    tasks = sweep_tasks(config, fuels)
    logger.info(f"Sweeping {len(tasks)} grid points")
    mapper = map_fn or map
    rows = list(mapper(sweep_point, tasks))
    failed = sum(1 for row in rows if row.error)
    if failed:
        logger.warning(f"{failed} of {len(rows)} sweep points failed")
    return rows
