import math

import numpy as np
import pytest

from conftest import build_worked_example
from generators import random_assessment
from mlrisk import (
    BaseWeightMatrix,
    COMPONENT_ORDER,
    EvalDomain,
    EvaluationFactor,
    FactorCategory,
    SameAxis,
    SecurityAttribute,
    TailoredOutFactor,
    UnknownId,
    efficiency_ratio,
    efficiency_surface,
    evaluate,
    rank_factors,
    sweep_ef,
    with_scores,
)

C, I, A = SecurityAttribute
P, R = EvalDomain


class TestSweep:
    def test_availability_rises_confidentiality_flat(self, worked_example):
        result = sweep_ef(worked_example, "EF1", steps=11, baseline=[0.0, 0.0, 0.0])
        cov_ap = [s.total_coverage[(A, P)] for s in result.samples]
        cov_cp = [s.total_coverage[(C, P)] for s in result.samples]
        assert cov_ap[0] == 0.0
        assert all(b > a for a, b in zip(cov_ap, cov_ap[1:]))
        # Slope equals the factor's coverage coefficient, exactly linear.
        assert cov_ap[-1] == pytest.approx(0.7981778570013864, abs=1e-12)
        assert cov_cp == [0.0] * 11

    def test_two_steps_hits_endpoints(self, worked_example):
        result = sweep_ef(worked_example, "EF1", steps=2)
        assert [s.score for s in result.samples] == [0.0, 1.0]

    def test_zero_mapped_factor_constant_curves(self, worked_example):
        worked_example.factors.append(
            EvaluationFactor(
                "EF9", "unmapped", FactorCategory.MODEL,
                BaseWeightMatrix.of(proactive=(5, 5, 5), reactive=(5, 5, 5)),
            )
        )
        result = sweep_ef(worked_example, "EF9", steps=5, baseline=[0.4, 0.5, 0.6, 0.0])
        first = result.samples[0].total_coverage
        for sample in result.samples[1:]:
            assert sample.total_coverage == first

    def test_samples_sorted_and_bounded(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            a = random_assessment(rng, allow_tailoring=False)
            ef_id = a.factors[0].id
            result = sweep_ef(a, ef_id, steps=7)
            scores = [s.score for s in result.samples]
            assert scores == sorted(scores)
            for sample in result.samples:
                for value in sample.total_coverage.values():
                    assert -1e-12 <= value <= 1.0 + 1e-12

    def test_default_baseline_is_zero(self, worked_example):
        result = sweep_ef(worked_example, "EF2")
        assert result.baseline_scores == (0.0, 0.0, 0.0)

    def test_matches_full_evaluation(self, worked_example):
        baseline = [0.3, 0.6, 0.9]
        result = sweep_ef(worked_example, "EF2", steps=5, baseline=baseline)
        for sample in result.samples:
            probe = list(baseline)
            probe[1] = sample.score
            report = evaluate(with_scores(worked_example, probe))
            for component in COMPONENT_ORDER:
                assert sample.total_coverage[component] == pytest.approx(
                    report.total_coverage[component], abs=1e-12
                )

    def test_three_point_collinearity(self):
        rng = np.random.default_rng(22)
        for _ in range(20):
            a = random_assessment(rng, allow_tailoring=False)
            result = sweep_ef(a, a.factors[0].id, steps=3)
            lo, mid, hi = result.samples
            for component in COMPONENT_ORDER:
                assert mid.total_coverage[component] == pytest.approx(
                    (lo.total_coverage[component] + hi.total_coverage[component]) / 2,
                    abs=1e-9,
                )

    def test_errors(self, worked_example):
        with pytest.raises(UnknownId):
            sweep_ef(worked_example, "ghost")
        worked_example.factors[0].tailored_out = True
        worked_example.factors[0].tailoring_justification = "n/a"
        with pytest.raises(TailoredOutFactor):
            sweep_ef(worked_example, "EF1")
        with pytest.raises(ValueError):
            sweep_ef(build_worked_example(), "EF1", steps=1)


class TestSurface:
    def test_minimum_neighborhood_contains_example_optimum(self, worked_example):
        # min_score 0.1 mirrors the worked example's "at least a basic level"
        # floor; with 0 allowed, dropping the priciest control wins instead.
        result = efficiency_surface(
            worked_example, "EF1", "EF2", fixed=[0.0, 0.0, 0.7],
            resolution=10, min_score=0.1,
        )
        flat = np.array(result.grid)
        i, j = np.unravel_index(np.argmin(flat), flat.shape)
        best_x, best_y = result.x_scores[i], result.y_scores[j]
        assert abs(best_x - 0.8) <= 0.1 + 1e-9
        assert abs(best_y - 0.7) <= 0.1 + 1e-9

    def test_resolution_two_corner_grid(self, worked_example):
        result = efficiency_surface(worked_example, "EF1", "EF2", resolution=2)
        assert result.x_scores == (0.0, 1.0)
        assert result.y_scores == (0.0, 1.0)
        assert len(result.grid) == 2 and all(len(row) == 2 for row in result.grid)

    def test_zero_ceilings_grid_of_zeros_where_feasible(self, worked_example):
        for f in worked_example.factors:
            f.max_cost = 0.0
        result = efficiency_surface(
            worked_example, "EF1", "EF2", fixed=[0.0, 0.0, 0.5], resolution=3
        )
        for i, x in enumerate(result.x_scores):
            for j, y in enumerate(result.y_scores):
                value = result.grid[i][j]
                assert value == 0.0 or math.isinf(value)
        # Interior cells have positive coverage, hence ratio 0.
        assert result.grid[2][2] == 0.0

    def test_cells_match_ratio_function(self, worked_example):
        result = efficiency_surface(
            worked_example, "EF1", "EF3", fixed=[0.0, 0.25, 0.0], resolution=3,
            min_score=0.1,
        )
        for i, x in enumerate(result.x_scores):
            for j, y in enumerate(result.y_scores):
                expected = efficiency_ratio(worked_example, [x, 0.25, y])
                assert result.grid[i][j] == pytest.approx(expected, rel=1e-12)

    def test_surface_row_equals_sweep_recomputation(self, worked_example):
        # A surface row with ef_y pinned equals re-evaluating the ratio at
        # the corresponding sweep baseline.
        result = efficiency_surface(
            worked_example, "EF1", "EF2", fixed=[0.0, 0.0, 0.7], resolution=5
        )
        j = 2  # EF2 pinned at y_scores[2]
        pinned = result.y_scores[j]
        for i, x in enumerate(result.x_scores):
            assert result.grid[i][j] == pytest.approx(
                efficiency_ratio(worked_example, [x, pinned, 0.7]), rel=1e-12
            )

    def test_errors(self, worked_example):
        with pytest.raises(SameAxis):
            efficiency_surface(worked_example, "EF1", "EF1")
        with pytest.raises(UnknownId):
            efficiency_surface(worked_example, "EF1", "ghost")
        with pytest.raises(ValueError):
            efficiency_surface(worked_example, "EF1", "EF2", resolution=1)


class TestRankFactors:
    def test_worked_example_availability_leader(self, worked_example):
        ranked = {fi.ef_id: fi for fi in rank_factors(worked_example)}
        best_ap = max(ranked.values(), key=lambda fi: fi.influence[(A, P)])
        assert best_ap.ef_id == "EF1"

    def test_zero_mapped_factor_has_zero_influence(self, worked_example):
        worked_example.factors.append(
            EvaluationFactor(
                "EF9", "unmapped", FactorCategory.MODEL,
                BaseWeightMatrix.of(proactive=(5, 5, 5), reactive=(5, 5, 5)),
            )
        )
        ranked = {fi.ef_id: fi for fi in rank_factors(worked_example)}
        assert all(v == 0.0 for v in ranked["EF9"].influence.values())

    def test_identical_factors_tie_broken_by_id(self, worked_example):
        a = worked_example
        twin = EvaluationFactor(
            "EF0", "twin of EF2", a.factors[1].category,
            a.factors[1].base_weights, max_cost=a.factors[1].max_cost,
            implementation_score=a.factors[1].implementation_score,
        )
        a.factors.append(twin)
        for (tid, eid), level in list(a.mapping.entries.items()):
            if eid == "EF2":
                a.mapping.entries[(tid, "EF0")] = level
        ranked = rank_factors(a)
        ef0 = next(fi for fi in ranked if fi.ef_id == "EF0")
        ef2 = next(fi for fi in ranked if fi.ef_id == "EF2")
        assert ef0.influence == ef2.influence
        assert ranked.index(ef0) < ranked.index(ef2)

    def test_influence_additivity(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            a = random_assessment(rng, allow_tailoring=False)
            n = len(a.active_factors())
            all_on = evaluate(with_scores(a, [1.0] * n)).total_coverage
            all_off = evaluate(with_scores(a, [0.0] * n)).total_coverage
            ranked = rank_factors(a)
            for component in COMPONENT_ORDER:
                summed = sum(fi.influence[component] for fi in ranked)
                assert summed == pytest.approx(
                    all_on[component] - all_off[component], abs=1e-9
                )

    def test_sorted_by_total_influence(self):
        rng = np.random.default_rng(24)
        for _ in range(20):
            ranked = rank_factors(random_assessment(rng))
            totals = [fi.total() for fi in ranked]
            assert totals == sorted(totals, reverse=True)
