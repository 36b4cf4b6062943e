"""Command-line front door.

Exit codes: 0 success, 1 validation or operational failure, 2 usage error.
Human tables round to 2 decimals; --format csv/json carry full precision.
ANSI styling is dropped when stdout is not a terminal or MLRISK_NO_COLOR is
set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog as catalog_mod
from . import cost as cost_mod
from . import optimizer as optimizer_mod
from . import project_io as pio
from . import scoring, sensitivity
from .domain import (
    Assessment,
    BaseWeightMatrix,
    COMPONENT_ORDER,
    EvalDomain,
    MappingMatrix,
    ProtectionTarget,
    SecurityAttribute,
    validate_assessment,
)
from .errors import MlriskError
from .optimizer import OptimizationConfig, Strategy

_PROFILE_RESOURCE = "example_weight_profile.json"


def _color_enabled() -> bool:
    return os.environ.get("MLRISK_NO_COLOR") is None and sys.stdout.isatty()


def _style(text: str, code: str) -> str:
    if not _color_enabled():
        return text
    return f"\033[{code}m{text}\033[0m"


def _bold(text: str) -> str:
    return _style(text, "1")


def _good(text: str) -> str:
    return _style(text, "32")


def _bad(text: str) -> str:
    return _style(text, "31")


def _fmt(value: float) -> str:
    if value != value or value in (float("inf"), float("-inf")):
        return "inf"
    return f"{value:.2f}"


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(path: str) -> Assessment:
    return pio.load_assessment(path)


def _parse_scores(raw: str | None) -> list[float] | None:
    if raw is None:
        return None
    try:
        return [float(part) for part in raw.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad score list {raw!r}: {exc}") from exc


# --------------------------------------------------------------------------
# table rendering

def _weight_table(assessment: Assessment, report: scoring.ScoreReport) -> list[str]:
    lines = [_bold("Relative weights")]
    active = assessment.active_factors()
    header = "    {:<10}".format("factor") + "".join(
        f"{attribute.value}/{domain.value[:1].upper():<2}".rjust(7)
        for attribute, domain in COMPONENT_ORDER
    )
    for target in assessment.targets:
        lines.append(f"  {target.id} ({target.name})")
        lines.append(header)
        for factor in active:
            cells = "".join(
                _fmt(report.relative_weights.weight(target.id, factor.id, attribute, domain)).rjust(7)
                for attribute, domain in COMPONENT_ORDER
            )
            lines.append("    {:<10}".format(factor.id) + cells)
    return lines


def _component_table(title: str, values: dict) -> list[str]:
    lines = [_bold(title)]
    lines.append("    {:<14}{:>10}{:>10}".format("attribute", "proactive", "reactive"))
    for attribute in SecurityAttribute:
        row = "    {:<14}".format(attribute.name.capitalize())
        for domain in EvalDomain:
            row += _fmt(values[(attribute, domain)]).rjust(10)
        lines.append(row)
    return lines


def _verdict_lines(report: scoring.ScoreReport) -> list[str]:
    if not report.threshold_verdicts:
        return []
    lines = [_bold("Thresholds")]
    for verdict in report.threshold_verdicts:
        mark = _good("pass") if verdict.passed else _bad("FAIL")
        lines.append(
            f"    {mark}  observed {_fmt(verdict.observed)} vs minimum "
            f"{_fmt(verdict.threshold.minimum)}  ({verdict.threshold})"
        )
    return lines


# --------------------------------------------------------------------------
# commands

def _cmd_validate(args) -> int:
    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 1
    assessment, _ = pio.parse_assessment_text(text)
    issues = validate_assessment(assessment)
    if issues:
        for issue in issues:
            print(f"invalid: {issue}", file=sys.stderr)
        return 1
    active = len(assessment.active_factors())
    print(
        f"OK: {assessment.name!r} ({active} active factor(s), "
        f"{len(assessment.targets)} target(s))"
    )
    return 0


def _cmd_evaluate(args) -> int:
    assessment = _load(args.input)
    report = scoring.evaluate(assessment)
    if args.format == "csv":
        _emit(pio.tabular_text(report), args.output)
        return 0
    if args.format == "json":
        _emit(pio.dumps_canonical(pio.report_to_document(report)), args.output)
        return 0
    lines = _weight_table(assessment, report)
    lines += _component_table("Final scores", report.final_scores)
    lines += _component_table("Total coverage", report.total_coverage)
    lines += _verdict_lines(report)
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_cost(args) -> int:
    assessment = _load(args.input)
    report = cost_mod.cost_report(assessment, _parse_scores(args.scores))
    if args.format == "json":
        _emit(pio.dumps_canonical(pio.cost_report_to_document(report)), args.output)
        return 0
    lines = [_bold("Per-factor cost")]
    for ef_id, value in report.per_factor_cost.items():
        lines.append(f"    {ef_id:<10}{value:>14.2f}")
    lines.append(f"    {'total':<10}{report.total_cost:>14.2f}")
    lines.append(f"Selected total coverage: {_fmt(report.tc_sel)}")
    lines.append(f"Efficiency ratio: {_fmt(report.efficiency_ratio)}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_sensitivity(args) -> int:
    assessment = _load(args.input)
    result = sensitivity.sweep_ef(
        assessment, args.ef, steps=args.steps, baseline=_parse_scores(args.baseline)
    )
    if args.format == "csv":
        _emit(pio.tabular_text(result), args.output)
        return 0
    if args.format == "json":
        _emit(pio.dumps_canonical(pio.sweep_to_document(result)), args.output)
        return 0
    lines = [_bold(f"Total coverage while sweeping {args.ef}")]
    lines.append("    {:<8}".format("score") + "".join(
        f"{attribute.value}/{domain.value[:1].upper():<2}".rjust(7)
        for attribute, domain in COMPONENT_ORDER
    ))
    for sample in result.samples:
        lines.append("    {:<8}".format(_fmt(sample.score)) + "".join(
            _fmt(sample.total_coverage[c]).rjust(7) for c in COMPONENT_ORDER
        ))
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_surface(args) -> int:
    assessment = _load(args.input)
    result = sensitivity.efficiency_surface(
        assessment,
        args.x,
        args.y,
        fixed=_parse_scores(args.fixed),
        resolution=args.resolution,
        min_score=args.min_score,
    )
    if args.format == "csv":
        _emit(pio.tabular_text(result), args.output)
        return 0
    if args.format == "json":
        _emit(pio.dumps_canonical(pio.surface_to_document(result)), args.output)
        return 0
    lines = [_bold(f"Efficiency ratio over {args.x} (rows) x {args.y} (columns)")]
    lines.append("    {:<8}".format("") + "".join(_fmt(y).rjust(9) for y in result.y_scores))
    for x, row in zip(result.x_scores, result.grid):
        lines.append("    {:<8}".format(_fmt(x)) + "".join(_fmt(v).rjust(9) for v in row))
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_optimize(args) -> int:
    assessment = _load(args.input)
    config = OptimizationConfig(
        min_score=args.min_score,
        grid_step=args.step,
        strategy=Strategy.COORDINATE_DESCENT if args.strategy == "descent" else Strategy.EXHAUSTIVE_GRID,
        max_iterations=args.max_iterations,
        restarts=args.restarts,
        seed=args.seed,
        evaluation_budget=args.budget,
    )
    result = optimizer_mod.optimize(assessment, config)
    if args.format == "json":
        _emit(pio.dumps_canonical(pio.optimization_to_document(result)), args.output)
        return 0
    ids = [f.id for f in assessment.active_factors()]
    lines = [_bold("Most cost-efficient implementation scores")]
    for ef_id, score in zip(ids, result.best_scores):
        lines.append(f"    {ef_id:<10}{score:>7.2f}")
    lines.append(f"Efficiency ratio: {_fmt(result.best_ratio)}")
    lines.append(f"Evaluations: {result.evaluations}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_catalog(args) -> int:
    entries = catalog_mod.builtin_catalog()
    if args.format == "json":
        _emit(pio.dumps_canonical(pio.catalog_to_document(entries)), args.output)
        return 0
    lines = [_bold(f"Built-in evaluation factor catalog ({len(entries)} entries)")]
    for entry in entries:
        lines.append(f"  {entry.id:<6}{entry.name}  [{entry.category.value}]")
        for i, level in enumerate(entry.levels):
            lines.append(f"        {level.guideline_score:>4.1f}  {level.label}: {level.description}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _load_weight_profile() -> dict:
    from importlib.resources import files

    text = files("mlrisk.data").joinpath(_PROFILE_RESOURCE).read_text(encoding="utf-8")
    return json.loads(text)


def _cmd_init(args) -> int:
    if args.ids == "all":
        ids = [entry.id for entry in catalog_mod.builtin_catalog()]
    else:
        ids = [part.strip() for part in args.ids.split(",") if part.strip()]
    factors = catalog_mod.instantiate_from_catalog(ids)

    # Non-normative demo weights so a fresh file evaluates end to end.
    profile = _load_weight_profile()["profiles"]
    for factor in factors:
        entry = profile.get(factor.id)
        if entry is None:
            continue
        bw = entry["base_weights"]
        factor.base_weights = BaseWeightMatrix.of(
            proactive=tuple(bw["proactive"][a.value] for a in SecurityAttribute),
            reactive=tuple(bw["reactive"][a.value] for a in SecurityAttribute),
        )
        factor.max_cost = float(entry["max_cost"])

    assessment = Assessment(
        name=args.name,
        factors=factors,
        targets=[ProtectionTarget("T1", "Example asset", raw_value=50)],
        mapping=MappingMatrix({}),
    )
    pio.save_assessment(assessment, args.output)
    print(f"wrote {args.output} with {len(factors)} factor(s); edit targets and mapping next")
    return 0


def _cmd_serve(args) -> int:
    from . import service

    ui_dir = args.ui
    if ui_dir is None:
        candidate = Path("frontend") / "dist"
        if candidate.is_dir():
            ui_dir = str(candidate)
    server = service.serve(args.input, (args.host, args.port), ui_dir=ui_dir)
    host, port = server.address
    print(f"serving {args.input} on http://{host}:{port}/ (Ctrl+C to stop)", flush=True)
    try:
        server.wait()
    except KeyboardInterrupt:
        server.shutdown()
    return 0


# --------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlrisk",
        description="Score security protection of ML-dependent assets and optimize the spend.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, formats=("table", "csv", "json")) -> None:
        p.add_argument("--input", required=True, help="assessment file")
        p.add_argument("--output", help="write output to this path instead of stdout")
        p.add_argument("--format", choices=formats, default="table")

    p = sub.add_parser("validate", help="check an assessment file")
    p.add_argument("--input", required=True)
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("evaluate", help="full score report")
    add_io(p)
    p.set_defaults(fn=_cmd_evaluate)

    p = sub.add_parser("cost", help="current costs and efficiency ratio")
    add_io(p, formats=("table", "json"))
    p.add_argument("--scores", help="comma-separated what-if scores for the active factors")
    p.set_defaults(fn=_cmd_cost)

    p = sub.add_parser("sensitivity", help="sweep one factor's score over [0, 1]")
    add_io(p)
    p.add_argument("--ef", required=True, help="factor id to sweep")
    p.add_argument("--steps", type=int, default=11)
    p.add_argument("--baseline", help="comma-separated scores for the non-swept factors")
    p.set_defaults(fn=_cmd_sensitivity)

    p = sub.add_parser("surface", help="efficiency ratio over a two-factor grid")
    add_io(p)
    p.add_argument("--x", required=True, help="factor id on the x axis")
    p.add_argument("--y", required=True, help="factor id on the y axis")
    p.add_argument("--fixed", help="comma-separated scores for the remaining factors")
    p.add_argument("--resolution", type=int, default=11)
    p.add_argument("--min-score", type=float, default=0.0, dest="min_score")
    p.set_defaults(fn=_cmd_surface)

    p = sub.add_parser("optimize", help="most cost-efficient implementation scores")
    add_io(p, formats=("table", "json"))
    p.add_argument("--strategy", choices=("grid", "descent"), default="grid")
    p.add_argument("--min-score", type=float, default=0.1, dest="min_score")
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--max-iterations", type=int, default=64, dest="max_iterations")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10_000_000)
    p.set_defaults(fn=_cmd_optimize)

    p = sub.add_parser("catalog", help="list the built-in evaluation factors")
    p.add_argument("--output")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(fn=_cmd_catalog)

    p = sub.add_parser("init", help="scaffold a new assessment from catalog ids")
    p.add_argument("--output", required=True)
    p.add_argument("--ids", default="all", help='comma-separated catalog ids, or "all"')
    p.add_argument("--name", default="New assessment")
    p.set_defaults(fn=_cmd_init)

    p = sub.add_parser("serve", help="run the HTTP API (and UI, when built)")
    p.add_argument("--input", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--ui", help="directory with the built UI bundle")
    p.set_defaults(fn=_cmd_serve)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except MlriskError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
