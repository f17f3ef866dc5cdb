import numpy as np
import pytest

from app.domain.entities.optimization import (
    Bounds,
    ConstraintBand,
    ConstraintSet,
    DesignEvaluation,
    DesignVector,
    GAConfig,
    ObjectiveCase,
)
from app.domain.exceptions import OutOfRangeError
from app.domain.reference_data import BASELINE_DESIGN, DEFAULT_BOUNDS, GENX_1B70, HYDROGEN, ON_DESIGN
from app.domain.services.cycle import run_cycle
from app.domain.services.optimizer import (
    INFEASIBLE_PENALTY,
    EngineDesignProblem,
    GeneticOptimizer,
    evaluate_design,
    ga_optimize,
    grid_points,
    grid_search_oracle,
    penalized_fitness,
    run_grid,
)
from app.infrastructure.workers.evaluation_pool import EvaluationPool

UNIT_BOX = Bounds(
    lower=DesignVector(TIT=0.0, delta_T=0.0, pi_fan=0.0, pi_compressor=0.0, alpha=0.0),
    upper=DesignVector(TIT=1.0, delta_T=1.0, pi_fan=1.0, pi_compressor=1.0, alpha=1.0),
)


class QuadraticProblem:
    """Concave bowl on the unit box with its peak at ``target``"""

    def __init__(self, target):
        self.bounds = UNIT_BOX
        self.target = np.asarray(target, dtype=float)
        self.seen = []

    def evaluate(self, x) -> DesignEvaluation:
        x = np.asarray(x, dtype=float)
        self.seen.append(x.copy())
        value = -float(((x - self.target) ** 2).sum())
        return DesignEvaluation(
            design=DesignVector.from_array(x), fitness=value, objective=value, violation=0.0, feasible=True
        )


TARGET = (0.3, 0.7, 0.5, 0.2, 0.9)


class TestGeneticOptimizer:
    def test_finds_peak_of_quadratic(self):
        result = GeneticOptimizer(
            QuadraticProblem(TARGET), GAConfig(population_size=60, generations=150, seed=7)
        ).run()
        assert np.abs(result.best.as_array() - np.array(TARGET)).max() < 2e-2
        assert result.objective > -1e-3

    def test_same_seed_same_result(self):
        cfg = GAConfig(population_size=20, generations=15, seed=3)
        first = GeneticOptimizer(QuadraticProblem(TARGET), cfg).run()
        second = GeneticOptimizer(QuadraticProblem(TARGET), cfg).run()
        assert first == second

    def test_history_one_entry_per_generation_and_never_worse(self):
        cfg = GAConfig(population_size=20, generations=25, seed=11)
        result = GeneticOptimizer(QuadraticProblem(TARGET), cfg).run()
        assert len(result.history) == 25
        assert all(b >= a for a, b in zip(result.history, result.history[1:]))
        assert result.evaluations == 20 + 24 * 19

    def test_candidates_stay_in_bounds(self):
        problem = QuadraticProblem((0.0, 1.0, 0.0, 1.0, 0.0))
        GeneticOptimizer(problem, GAConfig(population_size=20, generations=20, seed=5)).run()
        seen = np.array(problem.seen)
        assert seen.min() >= 0.0
        assert seen.max() <= 1.0


class TestGrid:
    def test_single_point_is_midpoint(self):
        points = grid_points(DEFAULT_BOUNDS, 1)
        assert points.shape == (1, 5)
        np.testing.assert_allclose(points[0], DEFAULT_BOUNDS.midpoint().as_array())

    def test_full_factorial(self):
        points = grid_points(UNIT_BOX, 3)
        assert points.shape == (243, 5)
        assert points.min() == 0.0 and points.max() == 1.0

    def test_needs_one_point(self):
        with pytest.raises(OutOfRangeError):
            grid_points(UNIT_BOX, 0)

    def test_grid_hits_target_on_grid(self):
        result = run_grid(QuadraticProblem((0.25, 0.75, 0.5, 0.0, 1.0)), 5)
        assert result.objective == pytest.approx(0.0, abs=1e-24)
        assert result.evaluations == 5 ** 5
        assert result.method == "grid"


class TestEngineDesignProblem:
    def test_baseline_design_matches_cycle(self):
        problem = EngineDesignProblem(ObjectiveCase.THRUST_MAX)
        evaluation = problem.evaluate(BASELINE_DESIGN.as_array())
        assert evaluation.feasible
        assert evaluation.objective == pytest.approx(51.778, rel=2e-3)
        assert evaluation.exergy is not None

    def test_unclosable_cycle_gets_fixed_penalty(self):
        problem = EngineDesignProblem(ObjectiveCase.THRUST_MAX)
        design = DesignVector(TIT=1000.0, delta_T=0.0, pi_fan=4.5, pi_compressor=32.0, alpha=9.0)
        evaluation = problem.evaluate(design.as_array())
        assert not evaluation.feasible
        assert evaluation.fitness == -INFEASIBLE_PENALTY
        assert evaluation.error

    def test_constraint_violation_is_penalized(self):
        bands = ConstraintSet(bands={"eta_thermal": ConstraintBand(minimum=0.5, maximum=0.75)})
        problem = EngineDesignProblem(ObjectiveCase.THRUST_MAX, constraints=bands)
        evaluation = problem.evaluate(BASELINE_DESIGN.as_array())
        assert not evaluation.feasible
        assert evaluation.violation > 0
        assert evaluation.fitness == pytest.approx(evaluation.objective - 1000.0 * evaluation.violation)

    def test_penalized_fitness_without_cycle(self):
        assert penalized_fitness(None, ObjectiveCase.THRUST_MAX, ConstraintSet(), 1000.0) == -INFEASIBLE_PENALTY

    def test_evaluate_design_checks_bounds(self):
        design = DesignVector(TIT=2500.0, delta_T=0.0, pi_fan=1.5, pi_compressor=29.9, alpha=9.1)
        with pytest.raises(OutOfRangeError):
            evaluate_design(design, bounds=DEFAULT_BOUNDS)

    def test_parallel_evaluation_matches_sequential(self):
        cfg = GAConfig(population_size=10, generations=3, seed=1)
        sequential = ga_optimize(ObjectiveCase.THRUST_MAX, DEFAULT_BOUNDS, ConstraintSet(), cfg)
        with EvaluationPool(2) as pool:
            parallel = ga_optimize(ObjectiveCase.THRUST_MAX, DEFAULT_BOUNDS, ConstraintSet(), cfg, map_fn=pool.map)
        assert parallel == sequential

    def test_engine_ga_history_never_worsens(self):
        cfg = GAConfig(population_size=12, generations=6, seed=5)
        result = GeneticOptimizer(EngineDesignProblem(ObjectiveCase.THRUST_MAX), cfg).run()
        assert len(result.history) == 6
        assert all(b >= a for a, b in zip(result.history, result.history[1:]))
        assert result.fitness == pytest.approx(result.history[-1])

    def test_engine_ga_same_seed_same_result(self):
        cfg = GAConfig(population_size=12, generations=4, seed=21)
        first = GeneticOptimizer(EngineDesignProblem(ObjectiveCase.PROPULSIVE_EFFICIENCY_MAX), cfg).run()
        second = GeneticOptimizer(EngineDesignProblem(ObjectiveCase.PROPULSIVE_EFFICIENCY_MAX), cfg).run()
        assert first == second
        other = GeneticOptimizer(EngineDesignProblem(ObjectiveCase.PROPULSIVE_EFFICIENCY_MAX),
                                 cfg.model_copy(update={"seed": 22})).run()
        assert other.best != first.best


WIDE_BANDS = ConstraintSet(bands={
    "tsfc": ConstraintBand(minimum=2.0, maximum=12.0),
    "eta_thermal": ConstraintBand(minimum=0.10, maximum=0.75),
})


def _recomputed(result):
    design = result.best
    spec = GENX_1B70.with_design(TIT=design.TIT, pi_fan=design.pi_fan,
                                 pi_compressor=design.pi_compressor, alpha=design.alpha)
    return run_cycle(spec, ON_DESIGN.with_delta_T(design.delta_T), HYDROGEN).performance


class TestSatisfiableBands:
    def test_ga_best_satisfies_bands(self):
        cfg = GAConfig(population_size=30, generations=8, seed=42)
        result = ga_optimize(ObjectiveCase.THRUST_MAX, DEFAULT_BOUNDS, WIDE_BANDS, cfg)
        assert result.feasible
        performance = _recomputed(result)
        assert WIDE_BANDS.is_satisfied(performance)
        assert performance.thrust == pytest.approx(result.objective, rel=1e-12)

    def test_oracle_best_satisfies_bands(self):
        result = grid_search_oracle(ObjectiveCase.THRUST_MAX, DEFAULT_BOUNDS, WIDE_BANDS, 3)
        assert result.feasible
        assert WIDE_BANDS.is_satisfied(_recomputed(result))
        assert result.objective == pytest.approx(83.41, rel=2e-3)

    def test_published_bands_unsatisfied_at_baseline(self):
        from app.domain.reference_data import CASE_CONSTRAINTS

        baseline = run_cycle(GENX_1B70, ON_DESIGN, HYDROGEN).performance
        assert not CASE_CONSTRAINTS[ObjectiveCase.THRUST_MAX].is_satisfied(baseline)
        assert WIDE_BANDS.is_satisfied(baseline)


class TestObjectiveCase:
    @pytest.mark.parametrize("value, expected", [
        (1, ObjectiveCase.THRUST_MAX),
        ("case2", ObjectiveCase.THERMAL_EFFICIENCY_MAX),
        ("propulsive_efficiency_max", ObjectiveCase.PROPULSIVE_EFFICIENCY_MAX),
    ])
    def test_parse(self, value, expected):
        assert ObjectiveCase.parse(value) is expected

    def test_band_violation_is_relative_to_width(self):
        band = ConstraintBand(minimum=2.0, maximum=8.0)
        assert band.violation(5.0) == 0.0
        assert band.violation(11.0) == pytest.approx(0.5)
        assert band.violation(-1.0) == pytest.approx(0.5)


@pytest.mark.slow
class TestDeskScale:
    """Population 100, 200 generations, oracle 7 points per axis, no constraint bands"""

    @pytest.fixture(scope="class")
    def outcomes(self):
        cfg = GAConfig(population_size=100, generations=200, seed=42)
        with EvaluationPool(4) as pool:
            results = {}
            for case in ObjectiveCase:
                ga = ga_optimize(case, DEFAULT_BOUNDS, ConstraintSet(), cfg, fuel=HYDROGEN,
                                 condition=ON_DESIGN, map_fn=pool.map)
                grid = grid_search_oracle(case, DEFAULT_BOUNDS, ConstraintSet(), 7, fuel=HYDROGEN,
                                          condition=ON_DESIGN, map_fn=pool.map)
                results[case] = (ga, grid)
        return results

    def test_ga_reaches_oracle(self, outcomes):
        for case, (ga, grid) in outcomes.items():
            assert ga.objective >= grid.objective - 0.01 * abs(grid.objective), case

    def test_improvements_over_baseline(self, outcomes):
        baseline, _ = evaluate_design(BASELINE_DESIGN, fuel=HYDROGEN, bounds=None)
        thrust = outcomes[ObjectiveCase.THRUST_MAX][0].performance.thrust
        eta_th = outcomes[ObjectiveCase.THERMAL_EFFICIENCY_MAX][0].performance.eta_thermal
        eta_p = outcomes[ObjectiveCase.PROPULSIVE_EFFICIENCY_MAX][0].performance.eta_propulsive
        assert thrust >= 1.10 * baseline.thrust
        assert eta_th >= baseline.eta_thermal
        assert eta_p >= baseline.eta_propulsive + 0.08

    def test_seed_reproduces(self, outcomes):
        cfg = GAConfig(population_size=100, generations=200, seed=42)
        again = ga_optimize(ObjectiveCase.THRUST_MAX, DEFAULT_BOUNDS, ConstraintSet(), cfg)
        assert again == outcomes[ObjectiveCase.THRUST_MAX][0]
