"""
Design Optimizer

Real-coded genetic algorithm and an exhaustive grid oracle over the five
design variables. Both work on a problem object exposing ``bounds`` and
``evaluate(x) -> DesignEvaluation``; evaluation order and the random stream
stay in the sequential loop so a parallel ``map_fn`` never changes results.
"""

import itertools
import logging
from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np

from app.domain.entities.engine import EngineSpec, FlightCondition
from app.domain.entities.exergy import ExergyReport
from app.domain.entities.gas import Fuel
from app.domain.entities.optimization import (
    Bounds,
    ConstraintSet,
    DesignEvaluation,
    DesignVector,
    GAConfig,
    ObjectiveCase,
    OptimizationResult,
)
from app.domain.entities.performance import CyclePerformance
from app.domain.exceptions import CycleToolError, OutOfRangeError
from app.domain.reference_data import DEFAULT_BOUNDS, GENX_1B70, ON_DESIGN, OPTIMIZATION_FUEL
from app.domain.services.cycle import run_cycle
from app.domain.services.exergy import audit_cycle

logger = logging.getLogger(__name__)

# Fitness of a design whose cycle cannot be closed
INFEASIBLE_PENALTY = 1.0e6

MapFn = Callable[[Callable, Iterable], Iterable]


def evaluate_design(
    design: DesignVector,
    template: EngineSpec = GENX_1B70,
    cond: FlightCondition = ON_DESIGN,
    fuel: Fuel = OPTIMIZATION_FUEL,
    bounds: Optional[Bounds] = DEFAULT_BOUNDS,
) -> Tuple[CyclePerformance, ExergyReport]:
    """
    Cycle and exergy audit of one design vector

    Args:
        design: Design variables
        template: Engine whose remaining parameters are kept
        cond: Flight condition; its delta_T is replaced by the design's
        fuel: Fuel burned
        bounds: Box the design must lie in; None skips the check

    Returns:
        (performance, exergy report)

    Raises:
        OutOfRangeError: design outside bounds
        InfeasibleCycleError: cycle cannot be closed
    """
    if bounds is not None and not bounds.contains(design):
        raise OutOfRangeError(f"design {design.model_dump()} outside bounds")
    spec = template.with_design(
        TIT=design.TIT, pi_fan=design.pi_fan, pi_compressor=design.pi_compressor, alpha=design.alpha
    )
    solution = run_cycle(spec, cond.with_delta_T(design.delta_T), fuel)
    return solution.performance, audit_cycle(solution)


def penalized_fitness(
    performance: Optional[CyclePerformance],
    case: ObjectiveCase,
    constraints: ConstraintSet,
    penalty_weight: float,
) -> float:
    """Objective minus weighted band violations; a fixed large penalty without a cycle"""
    if performance is None:
        return -INFEASIBLE_PENALTY
    objective = performance.metric(case.metric)
    return objective - penalty_weight * constraints.total_violation(performance)


class EngineDesignProblem:
    """
    Engine optimization problem for one objective case

    Attributes:
        case: Objective being maximized
        bounds: Design box
        constraints: Performance bands
        penalty_weight: Static penalty weight
    """

    def __init__(
        self,
        case: ObjectiveCase,
        bounds: Bounds = DEFAULT_BOUNDS,
        constraints: Optional[ConstraintSet] = None,
        template: EngineSpec = GENX_1B70,
        condition: FlightCondition = ON_DESIGN,
        fuel: Fuel = OPTIMIZATION_FUEL,
        penalty_weight: Optional[float] = None,
    ):
        self.case = case
        self.bounds = bounds
        self.constraints = constraints or ConstraintSet()
        self.template = template
        self.condition = condition
        self.fuel = fuel
        self.penalty_weight = penalty_weight if penalty_weight is not None else 10.0 * case.scale

    def evaluate(self, x) -> DesignEvaluation:
        design = DesignVector.from_array(x)
        try:
            perf, report = evaluate_design(design, self.template, self.condition, self.fuel, bounds=None)
        except (CycleToolError, ValueError, ArithmeticError) as e:
            return self._infeasible(design, str(e))
        if not perf.within_efficiency_cap():
            return self._infeasible(design, "efficiency outside the plausible range")

        violation = self.constraints.total_violation(perf)
        return DesignEvaluation(
            design=design,
            fitness=penalized_fitness(perf, self.case, self.constraints, self.penalty_weight),
            objective=perf.metric(self.case.metric),
            violation=violation,
            feasible=violation == 0.0,
            performance=perf,
            exergy=report,
        )

    @staticmethod
    def _infeasible(design: DesignVector, reason: str) -> DesignEvaluation:
        logger.debug(f"Infeasible design {design.model_dump()}: {reason}")
        return DesignEvaluation(
            design=design,
            fitness=-INFEASIBLE_PENALTY,
            objective=0.0,
            violation=INFEASIBLE_PENALTY,
            feasible=False,
            error=reason,
        )


class _BestTracker:
    """Best feasible design, else the least violating one, in evaluation order"""

    def __init__(self):
        self.best: Optional[DesignEvaluation] = None
        self.count = 0

    def offer(self, candidate: DesignEvaluation) -> None:
        self.count += 1
        if self.best is None or self._better(candidate, self.best):
            self.best = candidate

    @staticmethod
    def _better(a: DesignEvaluation, b: DesignEvaluation) -> bool:
        if a.feasible != b.feasible:
            return a.feasible
        if a.feasible:
            return a.objective > b.objective
        if a.violation != b.violation:
            return a.violation < b.violation
        return a.fitness > b.fitness


def _result(
    problem,
    method: str,
    tracker: _BestTracker,
    history: List[float],
    seed: Optional[int] = None,
) -> OptimizationResult:
    best = tracker.best
    return OptimizationResult(
        case=getattr(problem, "case", None),
        method=method,
        best=best.design,
        performance=best.performance,
        exergy=best.exergy,
        feasible=best.feasible,
        fitness=best.fitness,
        objective=best.objective,
        violation=best.violation,
        history=tuple(history),
        evaluations=tracker.count,
        seed=seed,
    )


class GeneticOptimizer:
    """
    Real-coded GA with tournament selection, blend crossover, Gaussian
    mutation, clamping to the box and elitism.
    """

    def __init__(self, problem, config: GAConfig, map_fn: Optional[MapFn] = None):
        self.problem = problem
        self.config = config
        self.map_fn = map_fn or map

    def _evaluate(self, population: np.ndarray) -> List[DesignEvaluation]:
        return list(self.map_fn(self.problem.evaluate, [row for row in population]))

    def _tournament(self, rng: np.random.Generator, fitness: np.ndarray) -> int:
        entrants = rng.integers(0, len(fitness), size=self.config.tournament_size)
        return int(entrants[np.argmax(fitness[entrants])])

    def _offspring(self, rng: np.random.Generator, population: np.ndarray, fitness: np.ndarray) -> np.ndarray:
        cfg = self.config
        bounds: Bounds = self.problem.bounds
        dim = population.shape[1]
        sigma = cfg.mutation_sigma * bounds.span
        count = len(population) - cfg.elite_count
        children = np.empty((count, dim))
        for i in range(count):
            first = population[self._tournament(rng, fitness)]
            second = population[self._tournament(rng, fitness)]
            if rng.random() < cfg.crossover_rate:
                u = rng.uniform(-cfg.blend_alpha, 1.0 + cfg.blend_alpha, size=dim)
                child = first + u * (second - first)
            else:
                child = first.copy()
            mutate = rng.random(dim) < cfg.mutation_rate
            child = child + mutate * rng.normal(0.0, 1.0, size=dim) * sigma
            children[i] = bounds.clip(child)
        return children

    def run(self) -> OptimizationResult:
        cfg = self.config
        bounds: Bounds = self.problem.bounds
        rng = np.random.default_rng(cfg.seed)
        lower, span = bounds.lower_array, bounds.span

        population = lower + rng.random((cfg.population_size, len(lower))) * span
        evaluations = self._evaluate(population)
        tracker = _BestTracker()
        for evaluation in evaluations:
            tracker.offer(evaluation)
        fitness = np.array([e.fitness for e in evaluations])
        history = [float(fitness.max())]

        for generation in range(1, cfg.generations):
            order = np.argsort(-fitness, kind="stable")
            elite_idx = order[:cfg.elite_count]
            children = self._offspring(rng, population, fitness)
            child_evals = self._evaluate(children)
            for evaluation in child_evals:
                tracker.offer(evaluation)

            population = np.vstack([population[elite_idx], children])
            evaluations = [evaluations[i] for i in elite_idx] + child_evals
            fitness = np.array([e.fitness for e in evaluations])
            history.append(float(fitness.max()))

            if generation % 10 == 0:
                logger.info(
                    f"Generation {generation}/{cfg.generations}: best fitness {history[-1]:.6g}, "
                    f"feasible so far: {tracker.best.feasible}"
                )

        result = _result(self.problem, "ga", tracker, history, seed=cfg.seed)
        logger.info(
            f"GA finished after {result.evaluations} evaluations: objective {result.objective:.6g}, "
            f"feasible={result.feasible}"
        )
        return result


def grid_points(bounds: Bounds, points_per_axis: int) -> np.ndarray:
    """Regular grid over the box; one point per axis is the midpoint"""
    if points_per_axis < 1:
        raise OutOfRangeError(f"points_per_axis must be at least 1, got {points_per_axis}")
    lower, upper = bounds.lower_array, bounds.upper_array
    if points_per_axis == 1:
        axes = [np.array([0.5 * (lo + hi)]) for lo, hi in zip(lower, upper)]
    else:
        axes = [np.linspace(lo, hi, points_per_axis) for lo, hi in zip(lower, upper)]
    return np.array(list(itertools.product(*axes)))


def run_grid(problem, points_per_axis: int, map_fn: Optional[MapFn] = None, chunk: int = 2048) -> OptimizationResult:
    """Exhaustive grid evaluation of a problem"""
    mapper = map_fn or map
    points = grid_points(problem.bounds, points_per_axis)
    tracker = _BestTracker()
    best_fitness = -np.inf
    for start in range(0, len(points), chunk):
        block = points[start:start + chunk]
        for evaluation in mapper(problem.evaluate, [row for row in block]):
            tracker.offer(evaluation)
            best_fitness = max(best_fitness, evaluation.fitness)
    logger.info(f"Grid of {len(points)} points: best objective {tracker.best.objective:.6g}")
    return _result(problem, "grid", tracker, [float(best_fitness)])


def ga_optimize(
    case: ObjectiveCase,
    bounds: Bounds,
    constraints: ConstraintSet,
    cfg: GAConfig,
    template: EngineSpec = GENX_1B70,
    condition: FlightCondition = ON_DESIGN,
    fuel: Fuel = OPTIMIZATION_FUEL,
    map_fn: Optional[MapFn] = None,
) -> OptimizationResult:
    """
    Genetic-algorithm search for one objective case

    Returns:
        Best feasible design, or the least violating one with feasible=False
    """
    problem = EngineDesignProblem(
        case, bounds, constraints, template, condition, fuel, penalty_weight=cfg.penalty_for(case)
    )
    logger.info(
        f"GA {case.value}: population {cfg.population_size}, generations {cfg.generations}, seed {cfg.seed}"
    )
    return GeneticOptimizer(problem, cfg, map_fn).run()


def grid_search_oracle(
    case: ObjectiveCase,
    bounds: Bounds,
    constraints: ConstraintSet,
    points_per_axis: int,
    template: EngineSpec = GENX_1B70,
    condition: FlightCondition = ON_DESIGN,
    fuel: Fuel = OPTIMIZATION_FUEL,
    penalty_weight: Optional[float] = None,
    map_fn: Optional[MapFn] = None,
) -> OptimizationResult:
    """Exhaustive grid search for one objective case"""
    problem = EngineDesignProblem(case, bounds, constraints, template, condition, fuel, penalty_weight)
    return run_grid(problem, points_per_axis, map_fn)
