"""Minimize the cost-efficiency ratio over implementation-score vectors.

Two strategies: an exhaustive grid search that returns the exact optimum for
small factor counts, and multi-restart coordinate descent with golden-section
line searches for larger ones. Both are deterministic; ties are broken by
lower ratio, then higher selected coverage, then lexicographically smallest
score vector, so the zero-cost degenerate case prefers full implementation.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from . import cost, scoring
from .domain import Assessment, validate_assessment
from .errors import BudgetExceeded, InfeasibleAssessment, InvalidAssessment

ProgressFn = Callable[[int, float], None]

# Grid values are rounded to 10 decimals so 0.1 + 7*0.1 lands on 0.8 exactly.
_GRID_DECIMALS = 10

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0

# Full tensors beyond this many grid cells are evaluated in slices over the
# first coordinate to bound peak memory.
_CHUNK_CELLS = 2_000_000


class Strategy(str, Enum):
    EXHAUSTIVE_GRID = "grid"
    COORDINATE_DESCENT = "descent"


@dataclass
class OptimizationConfig:
    """Search configuration; defaults match the worked example's setup."""

    min_score: float = 0.1
    grid_step: float = 0.1
    strategy: Strategy = Strategy.EXHAUSTIVE_GRID
    max_iterations: int = 64
    restarts: int = 8
    seed: int = 0
    evaluation_budget: int = 10_000_000

    def __post_init__(self) -> None:
        if not 0.0 <= self.min_score < 1.0:
            raise ValueError(f"min_score {self.min_score!r} must lie in [0, 1)")
        if self.grid_step <= 0:
            raise ValueError("grid_step must be positive")
        if self.min_score + self.grid_step > 1.0 + 1e-9:
            raise ValueError("grid_step must fit at least 2 points into [min_score, 1]")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.evaluation_budget < 1:
            raise ValueError("evaluation_budget must be >= 1")


@dataclass
class OptimizationResult:
    best_scores: tuple[float, ...]
    best_ratio: float
    evaluations: int
    trace: list[tuple[int, float]] | None = None


def grid_points(config: OptimizationConfig) -> list[float]:
    """The per-factor grid {min_score, min_score + step, ..., 1}."""
    points: list[float] = []
    k = 0
    while True:
        value = round(config.min_score + k * config.grid_step, _GRID_DECIMALS)
        if value > 1.0 + 1e-9:
            break
        points.append(min(value, 1.0))
        k += 1
    if points[-1] < 1.0:
        points.append(1.0)
    return points


def _prepare(assessment: Assessment) -> tuple[np.ndarray, np.ndarray]:
    issues = validate_assessment(assessment)
    if issues:
        raise InvalidAssessment(issues)
    _, coeff = scoring.selected_coverage_coefficients(assessment)
    ymax = np.array([f.max_cost for f in assessment.active_factors()], dtype=float)
    return coeff, ymax


def optimize_exhaustive(
    assessment: Assessment,
    config: OptimizationConfig | None = None,
    progress: ProgressFn | None = None,
) -> OptimizationResult:
    """Exact grid optimum.

    Raises BudgetExceeded when the grid has more cells than the configured
    budget, and InfeasibleAssessment when no score vector yields positive
    selected coverage (for instance an all-zero mapping).
    """
    config = config or OptimizationConfig()
    coeff, ymax = _prepare(assessment)
    n = len(ymax)
    points = np.array(grid_points(config))
    combinations = len(points) ** n
    if combinations > config.evaluation_budget:
        raise BudgetExceeded(combinations, config.evaluation_budget)
    if not np.any(coeff > 0):
        raise InfeasibleAssessment(
            "selected coverage is zero at every score vector; nothing to optimize"
        )

    per_axis_cost = [((2.0 * points - 1.0) ** 3 + 1.0) * y / 2.0 for y in ymax]
    per_axis_cov = [c * points for c in coeff]

    best: tuple[float, float, tuple[int, ...]] | None = None  # (ratio, -tc, indices)
    evaluated = 0

    def scan(cost_t: np.ndarray, cov_t: np.ndarray, prefix: tuple[int, ...]) -> None:
        nonlocal best, evaluated
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(cov_t > 0, cost_t / cov_t, math.inf)
        rmin = float(ratio.min())
        mask = ratio == rmin
        tc_best = float(cov_t[mask].max())
        mask &= cov_t == tc_best
        idx = tuple(int(i) for i in np.argwhere(mask)[0])
        candidate = (rmin, -tc_best, prefix + idx)
        evaluated += int(ratio.size)
        if best is None or candidate < best:
            best = candidate

    if combinations <= _CHUNK_CELLS or n == 1:
        scan(
            functools.reduce(np.add.outer, per_axis_cost),
            functools.reduce(np.add.outer, per_axis_cov),
            (),
        )
        if progress:
            progress(evaluated, best[0])
    else:
        rest_cost = functools.reduce(np.add.outer, per_axis_cost[1:])
        rest_cov = functools.reduce(np.add.outer, per_axis_cov[1:])
        for i0 in range(len(points)):
            scan(per_axis_cost[0][i0] + rest_cost, per_axis_cov[0][i0] + rest_cov, (i0,))
            if progress:
                progress(evaluated, best[0])

    ratio, _, indices = best
    if math.isinf(ratio):
        raise InfeasibleAssessment("efficiency ratio is +inf over the whole grid")
    best_scores = tuple(float(points[i]) for i in indices)
    return OptimizationResult(
        best_scores=best_scores,
        best_ratio=cost.efficiency_ratio(assessment, best_scores),
        evaluations=evaluated,
        trace=None,
    )


def _golden_min(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-7,
) -> tuple[float, float]:
    """Golden-section minimum of f on [lo, hi]; returns the best point seen,
    endpoints included."""
    a, b = lo, hi
    h = b - a
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    fc, fd = f(c), f(d)
    best_x, best_f = (c, fc) if fc <= fd else (d, fd)
    while h > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + _INVPHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = f(d)
        if fc < best_f:
            best_x, best_f = c, fc
        if fd < best_f:
            best_x, best_f = d, fd
    for x, fx in ((lo, f(lo)), (hi, f(hi))):
        if fx < best_f:
            best_x, best_f = x, fx
    return best_x, best_f


def optimize_heuristic(
    assessment: Assessment,
    config: OptimizationConfig | None = None,
    progress: ProgressFn | None = None,
) -> OptimizationResult:
    """Coordinate descent over continuous [min_score, 1] per factor, with a
    golden-section line search per coordinate and seeded random restarts.

    Always returns the best point found (ratio may be +inf on infeasible
    assessments). The trace records (step, current ratio) pairs, one at each
    restart's start and one after each sweep; fixed seeds give bit-identical
    results.
    """
    config = config or OptimizationConfig(strategy=Strategy.COORDINATE_DESCENT)
    coeff, ymax = _prepare(assessment)
    n = len(ymax)
    rng = np.random.default_rng(config.seed)

    evaluations = 0

    def ratio_at(x: np.ndarray) -> float:
        nonlocal evaluations
        evaluations += 1
        spend = float((((2.0 * x - 1.0) ** 3 + 1.0) * ymax / 2.0).sum())
        tc = float(coeff @ x)
        return spend / tc if tc > 0 else math.inf

    def tc_at(x: np.ndarray) -> float:
        return float(coeff @ x)

    trace: list[tuple[int, float]] = []
    best: tuple[float, float, tuple[float, ...]] | None = None
    step = 0

    for _ in range(config.restarts):
        x = rng.uniform(config.min_score, 1.0, n)
        fx = ratio_at(x)
        trace.append((step, fx))
        step += 1
        for _sweep in range(config.max_iterations):
            improved = False
            for i in range(n):
                def line(s: float, i: int = i) -> float:
                    y = x.copy()
                    y[i] = s
                    return ratio_at(y)

                xi, fi = _golden_min(line, config.min_score, 1.0)
                if fi < fx:
                    x[i] = xi
                    fx = fi
                    improved = True
            trace.append((step, fx))
            step += 1
            if progress:
                progress(evaluations, fx if best is None else min(fx, best[0]))
            if not improved:
                break
        candidate = (fx, -tc_at(x), tuple(float(v) for v in x))
        if best is None or candidate < best:
            best = candidate

    ratio, _, best_scores = best
    exact = cost.efficiency_ratio(assessment, best_scores) if math.isfinite(ratio) else math.inf
    return OptimizationResult(
        best_scores=best_scores,
        best_ratio=exact,
        evaluations=evaluations,
        trace=trace,
    )


def optimize(
    assessment: Assessment,
    config: OptimizationConfig | None = None,
    progress: ProgressFn | None = None,
) -> OptimizationResult:
    """Dispatch on the configured strategy."""
    config = config or OptimizationConfig()
    if config.strategy is Strategy.COORDINATE_DESCENT:
        return optimize_heuristic(assessment, config, progress)
    return optimize_exhaustive(assessment, config, progress)
