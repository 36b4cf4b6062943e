"""One-at-a-time sensitivity sweeps, efficiency surfaces and factor ranking.

Total coverage is affine in each implementation score, so sweep curves are
straight lines and a factor's influence is exactly the coverage difference
between its score at 1 and at 0. Surfaces evaluate the cost-efficiency
ratio over a two-factor grid with the remaining scores held fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import scoring
from .domain import Assessment, Component, validate_assessment
from .errors import (
    DimensionMismatch,
    InvalidAssessment,
    SameAxis,
    TailoredOutFactor,
    UnknownId,
)


@dataclass(frozen=True)
class SweepSample:
    score: float
    total_coverage: dict[Component, float]


@dataclass
class SweepResult:
    """Coverage per component while one factor's score sweeps [0, 1]."""

    ef_id: str
    samples: list[SweepSample]
    baseline_scores: tuple[float, ...]


@dataclass
class SurfaceResult:
    """Efficiency ratio over a two-factor score grid (row-major in x)."""

    ef_x: str
    ef_y: str
    fixed_scores: tuple[float, ...]
    x_scores: tuple[float, ...]
    y_scores: tuple[float, ...]
    grid: list[list[float]]


@dataclass
class FactorInfluence:
    ef_id: str
    influence: dict[Component, float]

    def total(self) -> float:
        return sum(self.influence.values())


def _active_index(assessment: Assessment, ef_id: str) -> int:
    active = assessment.active_factors()
    for i, f in enumerate(active):
        if f.id == ef_id:
            return i
    factor = assessment.factor(ef_id)  # raises UnknownId when undeclared
    if factor.tailored_out:
        raise TailoredOutFactor(f"factor {ef_id!r} is tailored out of the evaluation")
    raise UnknownId(f"unknown evaluation factor id {ef_id!r}")


def _baseline_vector(
    assessment: Assessment, baseline: Sequence[float] | None
) -> np.ndarray:
    n = len(assessment.active_factors())
    if baseline is None:
        return np.zeros(n)
    if len(baseline) != n:
        raise DimensionMismatch(
            f"baseline needs {n} scores for the active factors, got {len(baseline)}"
        )
    return np.asarray(baseline, dtype=float)


def sweep_ef(
    assessment: Assessment,
    ef_id: str,
    steps: int = 11,
    baseline: Sequence[float] | None = None,
) -> SweepResult:
    """Total coverage per component at ``steps`` equally spaced scores in
    [0, 1] for one factor, the others held at ``baseline`` (default 0)."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    issues = validate_assessment(assessment)
    if issues:
        raise InvalidAssessment(issues)
    index = _active_index(assessment, ef_id)
    base = _baseline_vector(assessment, baseline)

    ef_ids, coeff = scoring.coverage_coefficients(assessment)
    samples = []
    for score in np.linspace(0.0, 1.0, steps):
        vector = base.copy()
        vector[index] = score
        tc = np.einsum("itd,i->td", coeff, vector)
        samples.append(SweepSample(score=float(score), total_coverage=scoring.component_dict(tc)))
    return SweepResult(ef_id=ef_id, samples=samples, baseline_scores=tuple(float(b) for b in base))


def efficiency_surface(
    assessment: Assessment,
    ef_x: str,
    ef_y: str,
    fixed: Sequence[float] | None = None,
    resolution: int = 11,
    min_score: float = 0.0,
) -> SurfaceResult:
    """Efficiency ratio on a resolution x resolution grid over
    [min_score, 1] for two factors, the remaining scores held at ``fixed``."""
    if ef_x == ef_y:
        raise SameAxis(f"surface axes must differ, both are {ef_x!r}")
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    issues = validate_assessment(assessment)
    if issues:
        raise InvalidAssessment(issues)
    ix = _active_index(assessment, ef_x)
    iy = _active_index(assessment, ef_y)
    base = _baseline_vector(assessment, fixed)

    _, coeff = scoring.selected_coverage_coefficients(assessment)
    ymax = np.array([f.max_cost for f in assessment.active_factors()], dtype=float)

    def spend(vector: np.ndarray) -> float:
        return float((((2.0 * vector - 1.0) ** 3 + 1.0) * ymax / 2.0).sum())

    axis = np.linspace(min_score, 1.0, resolution)
    grid: list[list[float]] = []
    for x in axis:
        row = []
        for y in axis:
            vector = base.copy()
            vector[ix] = x
            vector[iy] = y
            tc = float(coeff @ vector)
            row.append(spend(vector) / tc if tc > 0 else math.inf)
        grid.append(row)
    return SurfaceResult(
        ef_x=ef_x,
        ef_y=ef_y,
        fixed_scores=tuple(float(b) for b in base),
        x_scores=tuple(float(v) for v in axis),
        y_scores=tuple(float(v) for v in axis),
        grid=grid,
    )


def rank_factors(assessment: Assessment) -> list[FactorInfluence]:
    """Factors ordered by how much total coverage they can move.

    Influence per component is the coverage at score 1 minus the coverage at
    score 0 with the other factors at their current scores; because coverage
    is affine per coordinate this is exact, not a perturbation estimate.
    Sorted by summed influence, descending, ties by id.
    """
    issues = validate_assessment(assessment)
    if issues:
        raise InvalidAssessment(issues)
    ef_ids, coeff = scoring.coverage_coefficients(assessment)
    influences = [
        FactorInfluence(ef_id=ef_id, influence=scoring.component_dict(coeff[i]))
        for i, ef_id in enumerate(ef_ids)
    ]
    return sorted(influences, key=lambda fi: (-fi.total(), fi.ef_id))
