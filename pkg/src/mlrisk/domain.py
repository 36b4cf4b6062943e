"""Core value types shared by every other module.

An assessment bundles evaluation factors (security controls rated 0..5 for
their contribution to confidentiality, integrity and availability in the
proactive and reactive domains), protection targets (assets or tasks valued
1..100), and a 0..5 mapping grid saying how strongly each factor influences
each target. All scoring is a pure function of this data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import EmptyTargetList, RawValueOutOfRange, UnknownId


class SecurityAttribute(str, Enum):
    """CIA triad member. Definition order fixes the reporting order C, I, A."""

    CONFIDENTIALITY = "C"
    INTEGRITY = "I"
    AVAILABILITY = "A"


class EvalDomain(str, Enum):
    """Whether a control prevents incidents or responds to them."""

    PROACTIVE = "proactive"
    REACTIVE = "reactive"


class FactorCategory(str, Enum):
    """Evaluation group a factor belongs to."""

    DATA = "Data"
    MODEL = "Model"
    EXECUTION_ENVIRONMENT = "ExecutionEnvironment"
    SECURITY_CONTROLS = "SecurityControls"


class TargetKind(str, Enum):
    """Assets and tasks are evaluated identically; the kind is descriptive."""

    ASSET = "Asset"
    TASK = "Task"


Component = tuple[SecurityAttribute, EvalDomain]

# Canonical reporting order: C, I, A crossed with proactive, reactive.
COMPONENT_ORDER: tuple[Component, ...] = tuple(
    (attribute, domain) for attribute in SecurityAttribute for domain in EvalDomain
)

# Absolute tolerance for normalization identities.
NORMALIZATION_TOL = 1e-9

WEIGHT_SCALE = (0, 5)  # inclusive bounds for base weights and mapping entries
RAW_VALUE_SCALE = (1, 100)


@dataclass(frozen=True)
class BaseWeightMatrix:
    """Per-factor contribution levels, one integer 0..5 per (attribute, domain).

    Stored in COMPONENT_ORDER. Use ``of`` to build one the way the weights
    are usually written down: one C/I/A triple per domain.
    """

    weights: tuple[int, int, int, int, int, int] = (0, 0, 0, 0, 0, 0)

    def __post_init__(self) -> None:
        if len(self.weights) != len(COMPONENT_ORDER):
            raise ValueError(f"expected {len(COMPONENT_ORDER)} weights, got {len(self.weights)}")

    @classmethod
    def of(
        cls,
        proactive: Sequence[int] = (0, 0, 0),
        reactive: Sequence[int] = (0, 0, 0),
    ) -> "BaseWeightMatrix":
        """Build from (C, I, A) triples for each domain."""
        by_domain = {EvalDomain.PROACTIVE: tuple(proactive), EvalDomain.REACTIVE: tuple(reactive)}
        for domain, triple in by_domain.items():
            if len(triple) != 3:
                raise ValueError(f"{domain.value} weights need exactly 3 entries (C, I, A)")
        attrs = list(SecurityAttribute)
        return cls(
            tuple(
                by_domain[domain][attrs.index(attribute)]
                for attribute, domain in COMPONENT_ORDER
            )
        )

    @classmethod
    def zero(cls) -> "BaseWeightMatrix":
        return cls()

    def get(self, attribute: SecurityAttribute, domain: EvalDomain) -> int:
        return self.weights[COMPONENT_ORDER.index((attribute, domain))]

    def as_dict(self) -> dict[Component, int]:
        return dict(zip(COMPONENT_ORDER, self.weights))


@dataclass
class EvaluationFactor:
    """A security control with base weights, a cost ceiling and an
    implementation score in [0, 1]."""

    id: str
    name: str
    category: FactorCategory
    base_weights: BaseWeightMatrix = field(default_factory=BaseWeightMatrix)
    max_cost: float = 0.0
    implementation_score: float = 0.0
    tailored_out: bool = False
    tailoring_justification: str | None = None


@dataclass
class ProtectionTarget:
    """An asset or task with a raw importance value 1..100.

    ``normalized_value`` is derived (raw / sum of raws) and excluded from
    equality so round-tripped assessments compare equal.
    """

    id: str
    name: str
    kind: TargetKind = TargetKind.ASSET
    raw_value: int = 1
    normalized_value: float | None = field(default=None, compare=False)


@dataclass
class MappingMatrix:
    """Dense (target, factor) -> 0..5 contribution grid; missing entries are 0.

    Explicit zeros are dropped on construction so the dense semantics and
    dict equality agree.
    """

    entries: dict[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.entries = {key: value for key, value in self.entries.items() if value != 0}

    @classmethod
    def from_factor_rows(cls, rows: Mapping[str, Mapping[str, int]]) -> "MappingMatrix":
        """Build from {factor_id: {target_id: level}} rows, the way the
        mapping is usually tabulated (one row per factor)."""
        entries = {
            (target_id, ef_id): level
            for ef_id, row in rows.items()
            for target_id, level in row.items()
        }
        return cls(entries)

    def get(self, target_id: str, ef_id: str) -> int:
        return self.entries.get((target_id, ef_id), 0)


@dataclass(frozen=True)
class FactorThreshold:
    """Minimum implementation score for one factor."""

    factor_id: str
    minimum: float


@dataclass(frozen=True)
class TargetThreshold:
    """Minimum protection score for one target in one component."""

    target_id: str
    attribute: SecurityAttribute
    domain: EvalDomain
    minimum: float


@dataclass(frozen=True)
class CategoryThreshold:
    """Minimum mean protection contribution for an evaluation group."""

    category: FactorCategory
    attribute: SecurityAttribute
    domain: EvalDomain
    minimum: float


Threshold = FactorThreshold | TargetThreshold | CategoryThreshold


@dataclass(frozen=True)
class ValidationIssue:
    """One violated invariant: which object, which field, what is wrong."""

    subject: str
    field: str
    message: str

    def __str__(self) -> str:
        where = f"{self.subject}." if self.subject else ""
        return f"{where}{self.field}: {self.message}"


@dataclass
class Assessment:
    """The full project under evaluation."""

    name: str
    factors: list[EvaluationFactor]
    targets: list[ProtectionTarget]
    mapping: MappingMatrix
    selected_components: tuple[Component, ...] = COMPONENT_ORDER
    thresholds: list[Threshold] = field(default_factory=list)
    schema_version: int = 1

    def __post_init__(self) -> None:
        # Canonicalize component selection: dedupe, fixed C/I/A x P/R order.
        selected = set(self.selected_components)
        self.selected_components = tuple(c for c in COMPONENT_ORDER if c in selected)

    def active_factors(self) -> list[EvaluationFactor]:
        """Factors that participate in scoring (not tailored out)."""
        return [f for f in self.factors if not f.tailored_out]

    def factor(self, ef_id: str) -> EvaluationFactor:
        for f in self.factors:
            if f.id == ef_id:
                return f
        raise UnknownId(f"unknown evaluation factor id {ef_id!r}")

    def target(self, target_id: str) -> ProtectionTarget:
        for t in self.targets:
            if t.id == target_id:
                return t
        raise UnknownId(f"unknown target id {target_id!r}")


def normalize_targets(targets: Sequence[ProtectionTarget]) -> list[ProtectionTarget]:
    """Populate normalized values (raw / sum of raws) on fresh copies.

    Raises EmptyTargetList / RawValueOutOfRange; the result sums to 1 within
    1e-9 and preserves the relative order of values.
    """
    if not targets:
        raise EmptyTargetList("cannot normalize an empty target list")
    for t in targets:
        if not _is_int(t.raw_value) or not RAW_VALUE_SCALE[0] <= t.raw_value <= RAW_VALUE_SCALE[1]:
            raise RawValueOutOfRange(t.id, t.raw_value)
    total = sum(t.raw_value for t in targets)
    return [replace(t, normalized_value=t.raw_value / total) for t in targets]


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_real(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def validate_assessment(assessment: Assessment) -> list[ValidationIssue]:
    """Return every violated invariant. Empty list means evaluable.

    Issues are data, not failures: callers decide whether to raise.
    """
    issues: list[ValidationIssue] = []
    add = issues.append

    factor_ids: set[str] = set()
    for f in assessment.factors:
        if not f.id:
            add(ValidationIssue(f.id, "id", "factor id must be non-empty"))
        if f.id in factor_ids:
            add(ValidationIssue(f.id, "id", "duplicate factor id"))
        factor_ids.add(f.id)
        for (attribute, domain), weight in f.base_weights.as_dict().items():
            if not _is_int(weight) or not WEIGHT_SCALE[0] <= weight <= WEIGHT_SCALE[1]:
                add(ValidationIssue(
                    f.id, "base_weights",
                    f"weight {weight!r} for {attribute.value}/{domain.value} outside [0, 5]",
                ))
        if not _is_real(f.implementation_score) or not 0.0 <= f.implementation_score <= 1.0:
            add(ValidationIssue(
                f.id, "implementation_score",
                f"score {f.implementation_score!r} outside [0, 1]",
            ))
        if not _is_real(f.max_cost) or f.max_cost < 0:
            add(ValidationIssue(f.id, "max_cost", f"cost {f.max_cost!r} must be >= 0"))
        if f.tailored_out and not (f.tailoring_justification or "").strip():
            add(ValidationIssue(f.id, "tailoring_justification", "missing tailoring justification"))

    if not any(not f.tailored_out for f in assessment.factors):
        add(ValidationIssue("", "factors", "at least one non-tailored-out factor required"))

    target_ids: set[str] = set()
    for t in assessment.targets:
        if not t.id:
            add(ValidationIssue(t.id, "id", "target id must be non-empty"))
        if t.id in target_ids:
            add(ValidationIssue(t.id, "id", "duplicate target id"))
        target_ids.add(t.id)
        if not _is_int(t.raw_value) or not RAW_VALUE_SCALE[0] <= t.raw_value <= RAW_VALUE_SCALE[1]:
            add(ValidationIssue(t.id, "raw_value", f"value {t.raw_value!r} outside [1, 100]"))

    if not assessment.targets:
        add(ValidationIssue("", "targets", "at least one target required"))

    for (target_id, ef_id), level in sorted(assessment.mapping.entries.items()):
        subject = f"({target_id}, {ef_id})"
        if target_id not in target_ids:
            add(ValidationIssue(subject, "mapping", f"unknown target id {target_id!r}"))
        if ef_id not in factor_ids:
            add(ValidationIssue(subject, "mapping", f"unknown factor id {ef_id!r}"))
        if not _is_int(level) or not WEIGHT_SCALE[0] <= level <= WEIGHT_SCALE[1]:
            add(ValidationIssue(subject, "mapping", f"mapping out of range: {level!r} not in [0, 5]"))

    if not assessment.selected_components:
        add(ValidationIssue("", "selected_components", "at least one component must be selected"))

    for threshold in assessment.thresholds:
        if not _is_real(threshold.minimum) or not 0.0 <= threshold.minimum <= 1.0:
            add(ValidationIssue("", "thresholds", f"minimum {threshold.minimum!r} outside [0, 1]"))
        if isinstance(threshold, FactorThreshold) and threshold.factor_id not in factor_ids:
            add(ValidationIssue("", "thresholds", f"unknown factor id {threshold.factor_id!r}"))
        if isinstance(threshold, TargetThreshold) and threshold.target_id not in target_ids:
            add(ValidationIssue("", "thresholds", f"unknown target id {threshold.target_id!r}"))

    return issues


def components_from(pairs: Iterable[tuple[SecurityAttribute, EvalDomain]]) -> tuple[Component, ...]:
    """Canonicalized component tuple (dedupe, fixed order)."""
    selected = set(pairs)
    return tuple(c for c in COMPONENT_ORDER if c in selected)
