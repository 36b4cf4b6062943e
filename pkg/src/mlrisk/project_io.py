"""Load, save and export assessments, reports and sweep data.

The on-disk format is canonical JSON: sorted keys, two-space indent, a
trailing newline, plain '.' decimals and no thousands separators, so saving
an unchanged assessment is byte-identical and fixtures diff cleanly. Loading
is strict: unknown fields, wrong types, unsupported schema versions and
locale-ambiguous numbers such as 15.000 are rejected with targeted messages,
and anything that loads passes domain validation.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
import warnings
from pathlib import Path
from typing import Any

from . import scoring
from .catalog import CatalogEntry
from .cost import CostReport
from .domain import (
    Assessment,
    BaseWeightMatrix,
    CategoryThreshold,
    COMPONENT_ORDER,
    EvalDomain,
    EvaluationFactor,
    FactorCategory,
    FactorThreshold,
    MappingMatrix,
    ProtectionTarget,
    SecurityAttribute,
    TargetKind,
    TargetThreshold,
    Threshold,
    validate_assessment,
)
from .errors import IoFailure, ParseError, ValidationError
from .optimizer import OptimizationResult
from .scoring import ScoreReport
from .sensitivity import SurfaceResult, SweepResult

SCHEMA_VERSION = 1


class ReportCacheMismatch(UserWarning):
    """The embedded report cache disagrees with a fresh evaluation."""


# --------------------------------------------------------------------------
# document building

def _weights_doc(matrix: BaseWeightMatrix) -> dict:
    doc: dict[str, dict[str, int]] = {d.value: {} for d in EvalDomain}
    for (attribute, domain), weight in matrix.as_dict().items():
        doc[domain.value][attribute.value] = weight
    return doc


def _component_doc(values: dict) -> dict:
    doc: dict[str, dict[str, float]] = {}
    for (attribute, domain), value in values.items():
        doc.setdefault(attribute.value, {})[domain.value] = value
    return doc


def _threshold_doc(threshold: Threshold) -> dict:
    if isinstance(threshold, FactorThreshold):
        return {"scope": "factor", "factor_id": threshold.factor_id, "minimum": threshold.minimum}
    if isinstance(threshold, TargetThreshold):
        return {
            "scope": "target",
            "target_id": threshold.target_id,
            "attribute": threshold.attribute.value,
            "domain": threshold.domain.value,
            "minimum": threshold.minimum,
        }
    return {
        "scope": "category",
        "category": threshold.category.value,
        "attribute": threshold.attribute.value,
        "domain": threshold.domain.value,
        "minimum": threshold.minimum,
    }


def to_document(assessment: Assessment, include_report: bool = False) -> dict:
    """Plain-dict form of an assessment, ready for canonical serialization."""
    doc: dict[str, Any] = {
        "schema_version": assessment.schema_version,
        "name": assessment.name,
        "factors": [
            {
                "id": f.id,
                "name": f.name,
                "category": f.category.value,
                "base_weights": _weights_doc(f.base_weights),
                "max_cost": f.max_cost,
                "implementation_score": f.implementation_score,
                "tailored_out": f.tailored_out,
                "tailoring_justification": f.tailoring_justification,
            }
            for f in assessment.factors
        ],
        "targets": [
            {"id": t.id, "name": t.name, "kind": t.kind.value, "raw_value": t.raw_value}
            for t in assessment.targets
        ],
        "mapping": _mapping_doc(assessment),
        "selected_components": [
            {"attribute": attribute.value, "domain": domain.value}
            for attribute, domain in assessment.selected_components
        ],
        "thresholds": [_threshold_doc(t) for t in assessment.thresholds],
    }
    if include_report:
        doc["report"] = report_to_document(scoring.evaluate(assessment))
    return doc


def _mapping_doc(assessment: Assessment) -> dict:
    doc: dict[str, dict[str, int]] = {}
    for (target_id, ef_id), level in sorted(assessment.mapping.entries.items()):
        doc.setdefault(target_id, {})[ef_id] = level
    return doc


def report_to_document(report: ScoreReport) -> dict:
    by_target_protection: dict[str, dict] = {}
    by_target_coverage: dict[str, dict] = {}
    for (target_id, attribute, domain), value in report.protection.items():
        by_target_protection.setdefault(target_id, {}).setdefault(attribute.value, {})[
            domain.value
        ] = value
    for (target_id, attribute, domain), value in report.coverage.items():
        by_target_coverage.setdefault(target_id, {}).setdefault(attribute.value, {})[
            domain.value
        ] = value
    weights: dict[str, dict] = {}
    for (target_id, ef_id, attribute, domain), value in report.relative_weights.weights.items():
        weights.setdefault(target_id, {}).setdefault(ef_id, {}).setdefault(attribute.value, {})[
            domain.value
        ] = value
    return {
        "relative_weights": weights,
        "protection": by_target_protection,
        "final_scores": _component_doc(report.final_scores),
        "coverage": by_target_coverage,
        "total_coverage": _component_doc(report.total_coverage),
        "threshold_verdicts": [
            {
                "threshold": _threshold_doc(v.threshold),
                "passed": v.passed,
                "observed": v.observed,
            }
            for v in report.threshold_verdicts
        ],
    }


def cost_report_to_document(report: CostReport) -> dict:
    return {
        "per_factor_cost": dict(report.per_factor_cost),
        "total_cost": report.total_cost,
        "tc_sel": report.tc_sel,
        "efficiency_ratio": json_number(report.efficiency_ratio),
    }


def sweep_to_document(result: SweepResult) -> dict:
    return {
        "ef_id": result.ef_id,
        "baseline_scores": list(result.baseline_scores),
        "samples": [
            {"score": s.score, "total_coverage": _component_doc(s.total_coverage)}
            for s in result.samples
        ],
    }


def surface_to_document(result: SurfaceResult) -> dict:
    return {
        "ef_x": result.ef_x,
        "ef_y": result.ef_y,
        "fixed_scores": list(result.fixed_scores),
        "x_scores": list(result.x_scores),
        "y_scores": list(result.y_scores),
        "grid": [[json_number(v) for v in row] for row in result.grid],
    }


def optimization_to_document(result: OptimizationResult) -> dict:
    return {
        "best_scores": list(result.best_scores),
        "best_ratio": json_number(result.best_ratio),
        "evaluations": result.evaluations,
        "trace": [[i, json_number(r)] for i, r in result.trace] if result.trace else None,
    }


def catalog_to_document(entries: list[CatalogEntry]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "catalog": [
            {
                "id": e.id,
                "name": e.name,
                "category": e.category.value,
                "levels": [
                    {
                        "label": level.label,
                        "description": level.description,
                        "guideline_score": level.guideline_score,
                    }
                    for level in e.levels
                ],
            }
            for e in entries
        ],
    }


def json_number(value: float):
    # JSON has no inf; the infeasible sentinel travels as the string "inf".
    return "inf" if math.isinf(value) else value


def dumps_canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------
# strict parsing

_STRING_RE = re.compile(r'"(?:[^"\\]|\\.)*"')
_AMBIGUOUS_NUMBER_RE = re.compile(r"(?<![\w.])[1-9]\d{0,2}(?:\.\d{3})+(?![\d.])")


def _reject_ambiguous_numbers(text: str) -> None:
    masked = _STRING_RE.sub(lambda m: " " * len(m.group(0)), text)
    match = _AMBIGUOUS_NUMBER_RE.search(masked)
    if match:
        token = match.group(0)
        line = text.count("\n", 0, match.start()) + 1
        plain = token.replace(".", "")
        raise ParseError(
            line,
            f"number {token} is locale-ambiguous (European thousands separators); "
            f"write {plain} for a whole amount or drop the trailing zeros for a decimal",
        )


class _Reader:
    """Strict dict walker: required keys, typed values, no unknown fields."""

    def __init__(self, obj: Any, where: str, strict: bool) -> None:
        if not isinstance(obj, dict):
            raise ParseError(None, f"{where}: expected an object, got {type(obj).__name__}")
        self.obj = obj
        self.where = where
        self.strict = strict
        self.seen: set[str] = set()

    def take(self, key: str, kind: str, optional: bool = False, default: Any = None) -> Any:
        self.seen.add(key)
        if key not in self.obj:
            if optional:
                return default
            raise ParseError(None, f"{self.where}: missing required field {key!r}")
        value = self.obj[key]
        if not _kind_ok(value, kind):
            raise ParseError(
                None, f"{self.where}.{key}: expected {kind}, got {type(value).__name__}"
            )
        return value

    def finish(self) -> None:
        if not self.strict:
            return
        unknown = sorted(set(self.obj) - self.seen)
        if unknown:
            raise ParseError(None, f"{self.where}: unknown field(s) {', '.join(unknown)}")


def _kind_ok(value: Any, kind: str) -> bool:
    if kind == "str":
        return isinstance(value, str)
    if kind == "str?":
        return value is None or isinstance(value, str)
    if kind == "int":
        return isinstance(value, int) and not isinstance(value, bool)
    if kind == "number":
        return isinstance(value, (int, float)) and not isinstance(value, bool)
    if kind == "bool":
        return isinstance(value, bool)
    if kind == "list":
        return isinstance(value, list)
    if kind == "dict":
        return isinstance(value, dict)
    raise AssertionError(kind)


def _enum_value(enum_cls, raw: str, where: str):
    try:
        return enum_cls(raw)
    except ValueError:
        valid = ", ".join(member.value for member in enum_cls)
        raise ParseError(None, f"{where}: {raw!r} is not one of {valid}") from None


def _parse_weights(doc: Any, where: str, strict: bool) -> BaseWeightMatrix:
    reader = _Reader(doc, where, strict)
    by_component: dict[tuple[SecurityAttribute, EvalDomain], int] = {}
    for domain in EvalDomain:
        row = _Reader(reader.take(domain.value, "dict"), f"{where}.{domain.value}", strict)
        for attribute in SecurityAttribute:
            by_component[(attribute, domain)] = row.take(attribute.value, "int")
        row.finish()
    reader.finish()
    return BaseWeightMatrix(tuple(by_component[c] for c in COMPONENT_ORDER))


def _parse_factor(doc: Any, index: int, strict: bool) -> EvaluationFactor:
    where = f"factors[{index}]"
    reader = _Reader(doc, where, strict)
    factor = EvaluationFactor(
        id=reader.take("id", "str"),
        name=reader.take("name", "str"),
        category=_enum_value(FactorCategory, reader.take("category", "str"), f"{where}.category"),
        base_weights=_parse_weights(reader.take("base_weights", "dict"), f"{where}.base_weights", strict),
        max_cost=float(reader.take("max_cost", "number")),
        implementation_score=float(reader.take("implementation_score", "number")),
        tailored_out=reader.take("tailored_out", "bool", optional=True, default=False),
        tailoring_justification=reader.take("tailoring_justification", "str?", optional=True),
    )
    reader.finish()
    return factor


def _parse_target(doc: Any, index: int, strict: bool) -> ProtectionTarget:
    where = f"targets[{index}]"
    reader = _Reader(doc, where, strict)
    target = ProtectionTarget(
        id=reader.take("id", "str"),
        name=reader.take("name", "str"),
        kind=_enum_value(TargetKind, reader.take("kind", "str"), f"{where}.kind"),
        raw_value=reader.take("raw_value", "int"),
    )
    reader.finish()
    return target


def _parse_threshold(doc: Any, index: int, strict: bool) -> Threshold:
    where = f"thresholds[{index}]"
    reader = _Reader(doc, where, strict)
    scope = reader.take("scope", "str")
    minimum = float(reader.take("minimum", "number"))
    if scope == "factor":
        threshold: Threshold = FactorThreshold(reader.take("factor_id", "str"), minimum)
    elif scope == "target":
        threshold = TargetThreshold(
            reader.take("target_id", "str"),
            _enum_value(SecurityAttribute, reader.take("attribute", "str"), f"{where}.attribute"),
            _enum_value(EvalDomain, reader.take("domain", "str"), f"{where}.domain"),
            minimum,
        )
    elif scope == "category":
        threshold = CategoryThreshold(
            _enum_value(FactorCategory, reader.take("category", "str"), f"{where}.category"),
            _enum_value(SecurityAttribute, reader.take("attribute", "str"), f"{where}.attribute"),
            _enum_value(EvalDomain, reader.take("domain", "str"), f"{where}.domain"),
            minimum,
        )
    else:
        raise ParseError(None, f"{where}.scope: {scope!r} is not one of factor, target, category")
    reader.finish()
    return threshold


def from_document(doc: Any, strict: bool = True) -> tuple[Assessment, dict | None]:
    """Assessment plus the embedded report cache, if any."""
    reader = _Reader(doc, "document", strict)
    version = reader.take("schema_version", "int")
    if version != SCHEMA_VERSION:
        raise ParseError(
            None,
            f"unsupported schema_version {version}; this build reads version {SCHEMA_VERSION}",
        )

    factors = [
        _parse_factor(item, i, strict) for i, item in enumerate(reader.take("factors", "list"))
    ]
    targets = [
        _parse_target(item, i, strict) for i, item in enumerate(reader.take("targets", "list"))
    ]

    entries: dict[tuple[str, str], int] = {}
    mapping_doc = reader.take("mapping", "dict")
    for target_id, row in mapping_doc.items():
        if not isinstance(row, dict):
            raise ParseError(None, f"mapping.{target_id}: expected an object")
        for ef_id, level in row.items():
            if not _kind_ok(level, "int"):
                raise ParseError(
                    None, f"mapping.{target_id}.{ef_id}: expected an integer level"
                )
            entries[(target_id, ef_id)] = level

    components = []
    for i, item in enumerate(reader.take("selected_components", "list")):
        row = _Reader(item, f"selected_components[{i}]", strict)
        components.append(
            (
                _enum_value(SecurityAttribute, row.take("attribute", "str"), "attribute"),
                _enum_value(EvalDomain, row.take("domain", "str"), "domain"),
            )
        )
        row.finish()

    thresholds = [
        _parse_threshold(item, i, strict)
        for i, item in enumerate(reader.take("thresholds", "list", optional=True, default=[]))
    ]
    report_cache = reader.take("report", "dict", optional=True)
    name = reader.take("name", "str")
    reader.finish()

    assessment = Assessment(
        name=name,
        factors=factors,
        targets=targets,
        mapping=MappingMatrix(entries),
        selected_components=tuple(components),
        thresholds=thresholds,
        schema_version=version,
    )
    return assessment, report_cache


def parse_assessment_text(text: str, strict: bool = True) -> tuple[Assessment, dict | None]:
    """Parse document text without validating domain invariants."""
    _reject_ambiguous_numbers(text)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from exc
    return from_document(doc, strict=strict)


# --------------------------------------------------------------------------
# file operations

def save_assessment(assessment: Assessment, path: str | Path, include_report: bool = False) -> None:
    """Canonical write; re-saving an unchanged assessment is byte-identical."""
    issues = validate_assessment(assessment)
    if issues:
        raise ValidationError(issues)
    text = dumps_canonical(to_document(assessment, include_report=include_report))
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def load_assessment(path: str | Path, strict: bool = True) -> Assessment:
    """Parse and fully validate an assessment file.

    An embedded report cache is advisory: it is recomputed and a
    ReportCacheMismatch warning is issued when it disagrees.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    assessment, report_cache = parse_assessment_text(text, strict=strict)
    issues = validate_assessment(assessment)
    if issues:
        raise ValidationError(issues)
    if report_cache is not None:
        fresh = report_to_document(scoring.evaluate(assessment))
        if fresh != report_cache:
            warnings.warn(
                f"{path}: embedded report cache is stale; using recomputed scores",
                ReportCacheMismatch,
                stacklevel=2,
            )
    return assessment


def save_catalog(entries: list[CatalogEntry], path: str | Path) -> None:
    try:
        Path(path).write_text(dumps_canonical(catalog_to_document(entries)), encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


# --------------------------------------------------------------------------
# CSV export

def _component_header() -> list[str]:
    return [f"{attribute.value}_{domain.value}" for attribute, domain in COMPONENT_ORDER]


def _csv_value(value: float) -> str:
    return repr(float(value))


def tabular_text(data: SweepResult | SurfaceResult | ScoreReport) -> str:
    """CSV with a header row; full precision; deterministic row order
    (score ascending / row-major / C,I,A x proactive,reactive)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if isinstance(data, SweepResult):
        writer.writerow(["score"] + _component_header())
        for sample in data.samples:
            writer.writerow(
                [_csv_value(sample.score)]
                + [_csv_value(sample.total_coverage[c]) for c in COMPONENT_ORDER]
            )
    elif isinstance(data, SurfaceResult):
        writer.writerow(["score_x", "score_y", "efficiency_ratio"])
        for i, x in enumerate(data.x_scores):
            for j, y in enumerate(data.y_scores):
                writer.writerow([_csv_value(x), _csv_value(y), _csv_value(data.grid[i][j])])
    elif isinstance(data, ScoreReport):
        writer.writerow(["attribute", "domain", "final_score", "total_coverage"])
        for attribute, domain in COMPONENT_ORDER:
            writer.writerow(
                [
                    attribute.value,
                    domain.value,
                    _csv_value(data.final_scores[(attribute, domain)]),
                    _csv_value(data.total_coverage[(attribute, domain)]),
                ]
            )
    else:
        raise TypeError(f"cannot export {type(data).__name__} as tabular data")
    return out.getvalue()


def export_tabular(data: SweepResult | SurfaceResult | ScoreReport, path: str | Path) -> None:
    try:
        Path(path).write_text(tabular_text(data), encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
