"""Scoring engine: relative weights, protection, final scores and coverage.

For each target, attribute and domain the relative weight of a factor is its
base weight times its mapping level, normalized by the sum of those products
over all active factors; a zero denominator yields weight 0. Protection is
the weight-averaged implementation score, the final score is the mean
protection over targets, coverage multiplies protection by the target's
normalized value, and total coverage sums coverage over targets. Every
emitted number lies in [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np

from . import domain as dom
from .domain import (
    Assessment,
    CategoryThreshold,
    Component,
    COMPONENT_ORDER,
    EvalDomain,
    FactorCategory,
    FactorThreshold,
    SecurityAttribute,
    TargetThreshold,
    Threshold,
    normalize_targets,
    validate_assessment,
)
from .errors import (
    DimensionMismatch,
    EmptyTargetList,
    InvalidAssessment,
    TailoredOutFactor,
    UnknownId,
    UnknownScopeId,
)

_ATTR_INDEX = {a: i for i, a in enumerate(SecurityAttribute)}
_DOM_INDEX = {d: i for i, d in enumerate(EvalDomain)}

CategoryMultipliers = Mapping[FactorCategory, float]


def component_dict(matrix: np.ndarray) -> dict[Component, float]:
    """Flatten a (3 attributes, 2 domains) array into a component-keyed dict."""
    return {
        (attribute, domain): float(matrix[_ATTR_INDEX[attribute], _DOM_INDEX[domain]])
        for attribute, domain in COMPONENT_ORDER
    }


@dataclass
class RelativeWeightTable:
    """Relative weight per (target id, factor id, attribute, domain).

    For each (target, attribute, domain) the weights either all vanish
    (degenerate denominator) or sum to 1 within 1e-9.
    """

    weights: dict[tuple[str, str, SecurityAttribute, EvalDomain], float]

    def weight(
        self,
        target_id: str,
        ef_id: str,
        attribute: SecurityAttribute,
        domain: EvalDomain,
    ) -> float:
        return self.weights.get((target_id, ef_id, attribute, domain), 0.0)


@dataclass(frozen=True)
class ThresholdVerdict:
    threshold: Threshold
    passed: bool
    observed: float


@dataclass
class ScoreReport:
    """Everything the evaluation produces, keyed by ids and enum members."""

    relative_weights: RelativeWeightTable
    protection: dict[tuple[str, SecurityAttribute, EvalDomain], float]
    final_scores: dict[Component, float]
    coverage: dict[tuple[str, SecurityAttribute, EvalDomain], float]
    total_coverage: dict[Component, float]
    threshold_verdicts: list[ThresholdVerdict] = field(default_factory=list)


@dataclass(frozen=True)
class _Arrays:
    """Vectorized view of an assessment's active factors."""

    ef_ids: tuple[str, ...]
    target_ids: tuple[str, ...]
    scores: np.ndarray        # (n_ef,)
    values: np.ndarray        # (n_target,) normalized
    weights: np.ndarray       # (n_target, n_ef, 3, 2) relative weights


def _as_arrays(
    assessment: Assessment,
    category_multipliers: CategoryMultipliers | None = None,
) -> _Arrays:
    active = assessment.active_factors()
    targets = normalize_targets(assessment.targets)
    ef_ids = tuple(f.id for f in active)
    target_ids = tuple(t.id for t in targets)

    bw = np.zeros((len(active), 3, 2))
    for i, f in enumerate(active):
        for (attribute, domain), weight in f.base_weights.as_dict().items():
            bw[i, _ATTR_INDEX[attribute], _DOM_INDEX[domain]] = weight
    if category_multipliers:
        mult = np.array([float(category_multipliers.get(f.category, 1.0)) for f in active])
        bw = bw * mult[:, None, None]

    mapping = np.zeros((len(targets), len(active)))
    for j, tid in enumerate(target_ids):
        for i, eid in enumerate(ef_ids):
            mapping[j, i] = assessment.mapping.get(tid, eid)

    products = mapping[:, :, None, None] * bw[None, :, :, :]
    denominators = products.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        weights = np.where(denominators != 0, products / denominators, 0.0)

    return _Arrays(
        ef_ids=ef_ids,
        target_ids=target_ids,
        scores=np.array([f.implementation_score for f in active], dtype=float),
        values=np.array([t.normalized_value for t in targets], dtype=float),
        weights=weights,
    )


def relative_weight(
    assessment: Assessment,
    target_id: str,
    ef_id: str,
    attribute: SecurityAttribute,
    domain: EvalDomain,
    category_multipliers: CategoryMultipliers | None = None,
) -> float:
    """Single relative weight, computed by direct summation.

    ``category_multipliers`` optionally scale each factor's weight-mapping
    product by its evaluation group before normalization; the default of 1
    everywhere recovers the plain formula.
    """
    target = assessment.target(target_id)
    factor = assessment.factor(ef_id)
    if factor.tailored_out:
        raise TailoredOutFactor(f"factor {ef_id!r} is tailored out of the evaluation")

    def product(f) -> float:
        mult = float(category_multipliers.get(f.category, 1.0)) if category_multipliers else 1.0
        return mult * f.base_weights.get(attribute, domain) * assessment.mapping.get(target.id, f.id)

    denominator = sum(product(f) for f in assessment.active_factors())
    if denominator == 0:
        return 0.0
    return product(factor) / denominator


def protection_score(
    assessment: Assessment,
    target_id: str,
    attribute: SecurityAttribute,
    domain: EvalDomain,
) -> float:
    """Weighted implementation score for one target and component."""
    assessment.target(target_id)  # raises UnknownId
    return sum(
        relative_weight(assessment, target_id, f.id, attribute, domain)
        * f.implementation_score
        for f in assessment.active_factors()
    )


def final_score(
    assessment: Assessment,
    attribute: SecurityAttribute,
    domain: EvalDomain,
) -> float:
    """Mean protection score over all targets."""
    if not assessment.targets:
        raise EmptyTargetList("final score needs at least one target")
    total = sum(
        protection_score(assessment, t.id, attribute, domain) for t in assessment.targets
    )
    return total / len(assessment.targets)


def coverage(
    assessment: Assessment,
    target_id: str,
    attribute: SecurityAttribute,
    domain: EvalDomain,
) -> float:
    """Protection score scaled by the target's normalized value."""
    targets = normalize_targets(assessment.targets)
    for t in targets:
        if t.id == target_id:
            return protection_score(assessment, target_id, attribute, domain) * t.normalized_value
    raise UnknownId(f"unknown target id {target_id!r}")


def total_coverage(
    assessment: Assessment,
    attribute: SecurityAttribute,
    domain: EvalDomain,
) -> float:
    """Value-weighted protection summed over all targets; in [0, 1]."""
    if not assessment.targets:
        raise EmptyTargetList("total coverage needs at least one target")
    return sum(coverage(assessment, t.id, attribute, domain) for t in assessment.targets)


def evaluate(
    assessment: Assessment,
    category_multipliers: CategoryMultipliers | None = None,
) -> ScoreReport:
    """Full evaluation: weights, protection, final scores, coverage,
    total coverage and threshold verdicts.

    Raises InvalidAssessment when validation reports issues. Deterministic:
    identical input produces a bit-identical report.
    """
    issues = validate_assessment(assessment)
    if issues:
        raise InvalidAssessment(issues)

    arrays = _as_arrays(assessment, category_multipliers)
    protection = np.einsum("jitd,i->jtd", arrays.weights, arrays.scores)
    final = protection.mean(axis=0)
    cover = protection * arrays.values[:, None, None]
    total = cover.sum(axis=0)

    weight_entries: dict[tuple[str, str, SecurityAttribute, EvalDomain], float] = {}
    for j, tid in enumerate(arrays.target_ids):
        for i, eid in enumerate(arrays.ef_ids):
            for attribute, domain in COMPONENT_ORDER:
                weight_entries[(tid, eid, attribute, domain)] = float(
                    arrays.weights[j, i, _ATTR_INDEX[attribute], _DOM_INDEX[domain]]
                )

    def by_target(matrix: np.ndarray) -> dict:
        return {
            (tid, attribute, domain): float(matrix[j, _ATTR_INDEX[attribute], _DOM_INDEX[domain]])
            for j, tid in enumerate(arrays.target_ids)
            for attribute, domain in COMPONENT_ORDER
        }

    report = ScoreReport(
        relative_weights=RelativeWeightTable(weight_entries),
        protection=by_target(protection),
        final_scores=component_dict(final),
        coverage=by_target(cover),
        total_coverage=component_dict(total),
    )
    report.threshold_verdicts = check_thresholds(assessment, report)
    return report


def check_thresholds(assessment: Assessment, report: ScoreReport) -> list[ThresholdVerdict]:
    """Compare each threshold against its observed value.

    Factor thresholds compare the implementation score, target thresholds the
    protection score, category thresholds the mean over targets of the
    category's summed weight-times-score contribution.
    """
    verdicts: list[ThresholdVerdict] = []
    active = assessment.active_factors()
    for threshold in assessment.thresholds:
        if isinstance(threshold, FactorThreshold):
            try:
                observed = assessment.factor(threshold.factor_id).implementation_score
            except UnknownId as exc:
                raise UnknownScopeId(str(exc)) from exc
        elif isinstance(threshold, TargetThreshold):
            key = (threshold.target_id, threshold.attribute, threshold.domain)
            if key not in report.protection:
                raise UnknownScopeId(f"unknown target id {threshold.target_id!r}")
            observed = report.protection[key]
        elif isinstance(threshold, CategoryThreshold):
            contributions = [
                sum(
                    report.relative_weights.weight(t.id, f.id, threshold.attribute, threshold.domain)
                    * f.implementation_score
                    for f in active
                    if f.category is threshold.category
                )
                for t in assessment.targets
            ]
            observed = sum(contributions) / len(contributions) if contributions else 0.0
        else:  # pragma: no cover - exhaustive over the union
            raise UnknownScopeId(f"unsupported threshold type {type(threshold).__name__}")
        verdicts.append(ThresholdVerdict(threshold, observed >= threshold.minimum, observed))
    return verdicts


def with_scores(assessment: Assessment, scores: Sequence[float]) -> Assessment:
    """Copy of the assessment with implementation scores replaced on the
    active factors, in their declaration order."""
    active = assessment.active_factors()
    if len(scores) != len(active):
        raise DimensionMismatch(
            f"expected {len(active)} scores for the active factors, got {len(scores)}"
        )
    it = iter(scores)
    factors = [
        f if f.tailored_out else replace(f, implementation_score=float(next(it)))
        for f in assessment.factors
    ]
    return replace(assessment, factors=factors)


def coverage_coefficients(assessment: Assessment) -> tuple[tuple[str, ...], np.ndarray]:
    """Per-factor linear coefficients of total coverage.

    Total coverage of component (T, D) equals sum_i coeff[i, T, D] * S_i for
    any score vector S over the active factors, because the relative weights
    do not depend on the scores. The optimizer and the sensitivity sweeps
    are built on this exact linearity.
    """
    arrays = _as_arrays(assessment)
    coeff = np.einsum("jitd,j->itd", arrays.weights, arrays.values)
    return arrays.ef_ids, coeff


def selected_coverage_coefficients(assessment: Assessment) -> tuple[tuple[str, ...], np.ndarray]:
    """Coefficients of the coverage sum over the assessment's selected
    components: tc_sel(S) = sum_i coeff[i] * S_i."""
    ef_ids, coeff = coverage_coefficients(assessment)
    idx = [
        (_ATTR_INDEX[attribute], _DOM_INDEX[domain])
        for attribute, domain in assessment.selected_components
    ]
    selected = np.zeros(len(ef_ids))
    for ai, di in idx:
        selected += coeff[:, ai, di]
    return ef_ids, selected
