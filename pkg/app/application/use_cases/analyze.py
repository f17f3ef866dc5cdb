"""
Analyze Use Case

Single design-point cycle with its exergy audit, optionally compared with
the same engine at a reference inlet temperature change.
"""

import logging
from typing import Dict, Optional

from app.api.models import RunConfig
from app.application.dtos.reports import AnalysisReport
from app.domain.entities.exergy import ExergyReport
from app.domain.entities.performance import CyclePerformance
from app.domain.repositories.fuel_repository import IFuelRepository
from app.domain.services.cycle import run_cycle
from app.domain.services.exergy import audit_cycle
from app.domain.services.gasmodel import fuel_lookup

logger = logging.getLogger(__name__)

CHANGE_QUANTITIES = (
    "intake_mass_flow", "thrust", "fuel_flow", "tsfc", "eta_thermal", "snox", "eta_exergetic",
)


def relative_changes(
    run: CyclePerformance,
    run_exergy: ExergyReport,
    reference: CyclePerformance,
    reference_exergy: ExergyReport,
) -> Dict[str, float]:
    """(run - reference) / reference for the headline quantities"""
    changes = {}
    for name in CHANGE_QUANTITIES:
        base = reference.metric(name)
        if base != 0:
            changes[name] = (run.metric(name) - base) / abs(base)
    base = reference_exergy.entropy_generation
    if base != 0:
        changes["entropy_generation"] = (run_exergy.entropy_generation - base) / abs(base)
    return changes


def analyze(config: RunConfig, fuels: Optional[IFuelRepository] = None) -> AnalysisReport:
    """
    Run one cycle from a config

    Raises:
        FuelNotFoundError: unknown fuel
        InfeasibleCycleError: the cycle cannot be closed, with the station
    """
    fuel = fuel_lookup(config.fuel, fuels)
    verbatim = config.exergy.verbatim_combustor
    logger.info(
        f"Analyzing {config.engine.name} on {fuel.name} at Ma {config.flight.mach}, "
        f"{config.flight.altitude} m, delta_T {config.flight.delta_T} K"
    )
    solution = run_cycle(config.engine, config.flight, fuel)
    exergy = audit_cycle(solution, verbatim_combustor=verbatim)

    reference_delta_T = config.reference_delta_T
    changes: Dict[str, float] = {}
    if reference_delta_T is not None and reference_delta_T != config.flight.delta_T:
        reference = run_cycle(config.engine, config.flight.with_delta_T(reference_delta_T), fuel)
        reference_exergy = audit_cycle(reference, verbatim_combustor=verbatim)
        changes = relative_changes(solution.performance, exergy, reference.performance, reference_exergy)
        logger.info(f"Thrust change vs delta_T {reference_delta_T} K: {100.0 * changes['thrust']:+.2f}%")

    return AnalysisReport(
        engine=config.engine.name,
        fuel=fuel.name,
        condition=config.flight,
        stations=solution.stations,
        ledger=solution.ledger,
        performance=solution.performance,
        exergy=exergy,
        reference_delta_T=reference_delta_T if changes else None,
        changes=changes,
    )
