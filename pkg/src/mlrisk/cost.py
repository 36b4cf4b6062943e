"""Cost curve and cost-efficiency ratio.

The spend needed to reach implementation score S is cubic in S: steep at
both ends, flat around the middle, exactly 0 at S=0, half the ceiling at
S=0.5 and the full ceiling at S=1. The efficiency ratio divides the summed
current costs by the total coverage of the selected components; lower is
better, and zero selected coverage maps to +inf (infeasible).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import scoring
from .domain import Assessment, EvaluationFactor
from .errors import DimensionMismatch, ScoreOutOfRange


def cost_curve(score: float, max_cost: float) -> float:
    """Spend at implementation score ``score`` for a ceiling of ``max_cost``."""
    if not 0.0 <= score <= 1.0:
        raise ScoreOutOfRange(f"implementation score {score!r} outside [0, 1]")
    if max_cost < 0:
        raise ValueError(f"max_cost must be >= 0, got {max_cost!r}")
    return ((2.0 * score - 1.0) ** 3 + 1.0) * max_cost / 2.0


def current_cost(factor: EvaluationFactor) -> float:
    """Spend implied by the factor's current implementation score."""
    return cost_curve(factor.implementation_score, factor.max_cost)


@dataclass
class CostReport:
    """Per-factor and total spend plus the efficiency ratio at one point."""

    per_factor_cost: dict[str, float]
    total_cost: float
    tc_sel: float
    efficiency_ratio: float


def efficiency_ratio(assessment: Assessment, scores: Sequence[float] | None = None) -> float:
    """Cost-to-coverage ratio at one score vector (+inf when coverage is 0).

    ``scores`` overrides the active factors' implementation scores, in
    declaration order; None evaluates the assessment as-is.
    """
    return cost_report(assessment, scores).efficiency_ratio


def cost_report(assessment: Assessment, scores: Sequence[float] | None = None) -> CostReport:
    """Costs and efficiency at the given (or current) implementation scores."""
    active = assessment.active_factors()
    if scores is None:
        scores = [f.implementation_score for f in active]
    if len(scores) != len(active):
        raise DimensionMismatch(
            f"expected {len(active)} scores for the active factors, got {len(scores)}"
        )
    evaluated = scoring.with_scores(assessment, scores)
    report = scoring.evaluate(evaluated)
    per_factor = {
        f.id: cost_curve(float(s), f.max_cost) for f, s in zip(active, scores)
    }
    total = sum(per_factor.values())
    tc_sel = sum(report.total_coverage[c] for c in assessment.selected_components)
    ratio = total / tc_sel if tc_sel > 0 else math.inf
    return CostReport(
        per_factor_cost=per_factor,
        total_cost=total,
        tc_sel=tc_sel,
        efficiency_ratio=ratio,
    )
