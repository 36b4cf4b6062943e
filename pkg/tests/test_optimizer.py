import math

import numpy as np
import pytest
from scipy import optimize as scipy_optimize

import oracle
from conftest import build_worked_example
from generators import random_assessment
from mlrisk import (
    Assessment,
    BaseWeightMatrix,
    BudgetExceeded,
    EvaluationFactor,
    FactorCategory,
    InfeasibleAssessment,
    MappingMatrix,
    OptimizationConfig,
    ProtectionTarget,
    Strategy,
    efficiency_ratio,
    optimize,
    optimize_exhaustive,
    optimize_heuristic,
)
from mlrisk.optimizer import grid_points


def _single_factor_assessment(max_cost, weights=(0, 0, 4, 0, 0, 2)):
    factor = EvaluationFactor(
        "EF1", "only", FactorCategory.DATA, BaseWeightMatrix(weights), max_cost=max_cost
    )
    target = ProtectionTarget("T1", "t", raw_value=50)
    return Assessment("single", [factor], [target], MappingMatrix({("T1", "EF1"): 3}))


class TestExhaustive:
    def test_worked_example_optimum(self, worked_example):
        result = optimize_exhaustive(worked_example)
        assert result.best_scores == (0.8, 0.7, 0.7)
        assert result.best_ratio == pytest.approx(7264.276483956669, abs=1e-9)
        assert result.evaluations == 1000

    def test_matches_brute_force_oracle(self):
        # Ratios can tie exactly in real arithmetic (e.g. a lone factor whose
        # continuous optimum sits midway between two grid points), and float
        # noise then orders the tied cells differently per implementation, so
        # the check is optimality of the returned point, not argmin identity.
        rng = np.random.default_rng(5)
        config = OptimizationConfig(min_score=0.1, grid_step=0.1)
        for _ in range(15):
            a = random_assessment(
                rng, max_factors=3, max_targets=3,
                allow_tailoring=False, ensure_coverage=True,
            )
            result = optimize_exhaustive(a, config)
            bw = {
                f.id: {
                    (attr.value, dom.value[:1].upper()): f.base_weights.get(attr, dom)
                    for attr, dom in __import__("mlrisk").COMPONENT_ORDER
                }
                for f in a.active_factors()
            }
            values = {t.id: t.raw_value for t in a.targets}
            max_costs = {f.id: f.max_cost for f in a.active_factors()}
            components = tuple(
                (attr.value, dom.value[:1].upper()) for attr, dom in a.selected_components
            )
            combo, ratio, _ = oracle.brute_force_optimum(
                bw, dict(a.mapping.entries), values, max_costs, components=components,
            )
            ef_ids = sorted(bw)
            at_engine_point = oracle.efficiency_ratio(
                bw, dict(a.mapping.entries),
                dict(zip(ef_ids, result.best_scores)), values, max_costs, components,
            )
            tol = max(1e-9, 1e-9 * abs(ratio))
            assert at_engine_point <= ratio + tol
            assert result.best_ratio == pytest.approx(ratio, rel=1e-9)

    def test_zero_cost_single_factor_prefers_full_implementation(self):
        result = optimize_exhaustive(_single_factor_assessment(max_cost=0.0))
        assert result.best_scores == (1.0,)
        assert result.best_ratio == 0.0

    def test_all_zero_mapping_is_infeasible(self, worked_example):
        worked_example.mapping = MappingMatrix({})
        with pytest.raises(InfeasibleAssessment):
            optimize_exhaustive(worked_example)

    def test_budget_exceeded(self, worked_example):
        config = OptimizationConfig(evaluation_budget=999)
        with pytest.raises(BudgetExceeded) as err:
            optimize_exhaustive(worked_example, config)
        assert err.value.combinations == 1000

    def test_monotone_budget(self, worked_example):
        coarse = optimize_exhaustive(worked_example, OptimizationConfig(grid_step=0.1))
        fine = optimize_exhaustive(worked_example, OptimizationConfig(grid_step=0.05))
        finest = optimize_exhaustive(worked_example, OptimizationConfig(grid_step=0.025))
        assert fine.best_ratio <= coarse.best_ratio + 1e-12
        assert finest.best_ratio <= fine.best_ratio + 1e-12

    def test_scores_respect_bounds(self):
        rng = np.random.default_rng(6)
        config = OptimizationConfig(min_score=0.3, grid_step=0.1)
        for _ in range(10):
            a = random_assessment(
                rng, max_factors=3, max_targets=3,
                allow_tailoring=False, ensure_coverage=True,
            )
            result = optimize_exhaustive(a, config)
            assert all(0.3 <= s <= 1.0 for s in result.best_scores)

    def test_grid_lands_on_decimal_lattice(self):
        points = grid_points(OptimizationConfig(min_score=0.1, grid_step=0.1))
        assert points == [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]

    def test_grid_includes_upper_endpoint(self):
        points = grid_points(OptimizationConfig(min_score=0.0, grid_step=0.3))
        assert points == [0.0, 0.3, 0.6, 0.9, 1.0]


class TestHeuristic:
    def _config(self, seed=0):
        return OptimizationConfig(strategy=Strategy.COORDINATE_DESCENT, seed=seed)

    def test_within_one_percent_of_grid_on_worked_example(self, worked_example):
        grid = optimize_exhaustive(worked_example)
        descent = optimize_heuristic(worked_example, self._config())
        assert descent.best_ratio <= grid.best_ratio * 1.01
        assert descent.best_ratio >= grid.best_ratio * 0.99

    def test_single_factor_matches_scalar_oracle(self):
        a = _single_factor_assessment(max_cost=20000.0)
        descent = optimize_heuristic(a, self._config())

        result = scipy_optimize.minimize_scalar(
            lambda s: efficiency_ratio(a, [float(np.clip(s, 0.1, 1.0))]),
            bounds=(0.1, 1.0),
            method="bounded",
            options={"xatol": 1e-10},
        )
        assert descent.best_scores[0] == pytest.approx(result.x, abs=1e-4)
        assert descent.best_ratio == pytest.approx(result.fun, rel=1e-6)

    def test_deterministic_for_fixed_seed(self, worked_example):
        first = optimize_heuristic(worked_example, self._config(seed=123))
        second = optimize_heuristic(worked_example, self._config(seed=123))
        assert first.best_scores == second.best_scores
        assert first.best_ratio == second.best_ratio
        assert first.evaluations == second.evaluations
        assert first.trace == second.trace

    def test_seed_changes_search_not_quality(self, worked_example):
        a = optimize_heuristic(worked_example, self._config(seed=1))
        b = optimize_heuristic(worked_example, self._config(seed=2))
        assert a.best_ratio == pytest.approx(b.best_ratio, rel=1e-3)

    def test_never_worse_than_any_start(self, worked_example):
        result = optimize_heuristic(worked_example, self._config(seed=9))
        assert result.trace, "trace should record restart starts and sweeps"
        assert result.best_ratio <= min(r for _, r in result.trace) + 1e-9

    def test_scores_respect_bounds(self):
        rng = np.random.default_rng(8)
        for seed in range(5):
            a = random_assessment(
                rng, max_factors=4, max_targets=4,
                allow_tailoring=False, ensure_coverage=True,
            )
            config = OptimizationConfig(
                strategy=Strategy.COORDINATE_DESCENT, min_score=0.2, seed=seed
            )
            result = optimize_heuristic(a, config)
            assert all(0.2 <= s <= 1.0 for s in result.best_scores)

    def test_infeasible_returns_inf_without_error(self, worked_example):
        worked_example.mapping = MappingMatrix({})
        result = optimize_heuristic(worked_example, self._config())
        assert math.isinf(result.best_ratio)


class TestDispatchAndConfig:
    def test_optimize_dispatches_on_strategy(self, worked_example):
        grid = optimize(worked_example, OptimizationConfig(strategy=Strategy.EXHAUSTIVE_GRID))
        descent = optimize(
            worked_example, OptimizationConfig(strategy=Strategy.COORDINATE_DESCENT)
        )
        assert grid.best_scores == (0.8, 0.7, 0.7)
        assert descent.trace is not None

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"min_score": 1.0},
            {"min_score": -0.1},
            {"grid_step": 0.0},
            {"min_score": 0.95, "grid_step": 0.2},
            {"restarts": 0},
            {"max_iterations": 0},
            {"evaluation_budget": 0},
        ],
    )
    def test_config_invariants(self, kwargs):
        with pytest.raises(ValueError):
            OptimizationConfig(**kwargs)
