"""
Optimize Use Case

GA search per objective case with an optional grid cross-check, reported
next to the unmodified engine.
"""

import logging
from typing import Callable, Iterable, List, Optional

from app.api.models import RunConfig
from app.application.dtos.reports import CaseOutcome, OptimizationReport
from app.domain.repositories.fuel_repository import IFuelRepository
from app.domain.services.cycle import run_cycle
from app.domain.services.exergy import audit_cycle
from app.domain.services.gasmodel import fuel_lookup
from app.domain.services.optimizer import ga_optimize, grid_search_oracle

logger = logging.getLogger(__name__)


def run_optimization(
    config: RunConfig,
    fuels: Optional[IFuelRepository] = None,
    map_fn: Optional[Callable[[Callable, Iterable], Iterable]] = None,
    seed: Optional[int] = None,
) -> OptimizationReport:
    """
    Optimize every requested case

    Args:
        config: Run config with an optimize section
        fuels: Fuel database
        map_fn: Order-preserving map used for population and grid evaluation
        seed: Overrides the GA seed of the config

    Returns:
        OptimizationReport; check any_feasible before trusting the optima
    """
    section = config.optimize
    fuel = fuel_lookup(section.fuel, fuels)
    ga_config = section.ga if seed is None else section.ga.model_copy(update={"seed": seed})
    bounds = section.resolved_bounds()

    baseline = run_cycle(config.engine, section.flight, fuel)
    baseline_exergy = audit_cycle(baseline)

    outcomes: List[CaseOutcome] = []
    for case in section.cases():
        constraints = section.constraints_for(case)
        ga = ga_optimize(case, bounds, constraints, ga_config, config.engine, section.flight, fuel, map_fn)
        grid = None
        if section.oracle_points > 0:
            grid = grid_search_oracle(
                case, bounds, constraints, section.oracle_points, config.engine, section.flight, fuel,
                penalty_weight=ga_config.penalty_for(case), map_fn=map_fn,
            )
        outcome = CaseOutcome(case=case, ga=ga, grid=grid)
        gap = outcome.oracle_gap()
        if gap is not None:
            logger.info(f"case{case.number}: GA objective {ga.objective:.6g}, oracle gap {100.0 * gap:+.3f}%")
        if not ga.feasible:
            logger.warning(f"case{case.number}: no design satisfies the constraint bands")
        outcomes.append(outcome)

    return OptimizationReport(
        baseline=baseline.performance,
        baseline_entropy_generation=baseline_exergy.entropy_generation,
        outcomes=tuple(outcomes),
    )
