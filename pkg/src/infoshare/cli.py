"""Command-line front end.

Subcommands: validate, pointwise, decompose, lattice, eval, check.
Global flags select the log base, tolerance, seed, trial count, the n=5
override, and text versus structured (JSON) output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import checks
from .algebra import ExpressionError, eval_expression, eval_mutual, parse_expression
from .decomposition import (
    decompose_expected,
    decompose_pointwise,
    decomposition_rows,
    expected_valuation,
    lattice_valuation,
    mi_decompose,
)
from .distribution import InvalidDistribution, JointDistribution, ZeroMass, load_file
from .lattice import enumerate_antichains, to_dot
from .measures import (
    cond_mutual_content,
    cond_pointwise,
    cond_surprisal,
    intersection_content,
    mutual_content,
    set_log_base,
    surprisal,
    synergy_content,
    unique_content,
    union_content,
)

_BASES = {"2": 2.0, "e": math.e, "10": 10.0}


@dataclass(frozen=True)
class RunConfig:
    """Global run options shared by every subcommand."""

    base: float
    tolerance: float
    seed: int
    trials: int
    allow_n5: bool
    structured: bool

    def __post_init__(self) -> None:
        if not self.tolerance > 0.0:
            raise ValueError("tolerance must be positive")
        if self.trials < 1:
            raise ValueError("trial count must be at least 1")


def _fmt(value: float) -> str:
    return f"{value:.9f}"


def _fmt_res(value: float) -> str:
    return f"{value:.9e}"


def _parse_realization(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"realization {text!r} must be comma-separated integers") from None


def _parse_source(d: JointDistribution, text: str) -> frozenset[int]:
    names = [part.strip() for part in text.split(",") if part.strip()]
    if not names:
        raise ValueError(f"empty source specification {text!r}")
    return d.variables.source_from_names(names)


def _parse_predictors(d: JointDistribution, text: str) -> list[frozenset[int]]:
    if ";" in text:
        groups = [g for g in text.split(";") if g.strip()]
    else:
        groups = [g for g in text.split(",") if g.strip()]
    return [_parse_source(d, g) for g in groups]


def _source_label(d: JointDistribution, source) -> str:
    names = d.variables.names
    return "{" + ",".join(names[i] for i in sorted(source)) + "}"


def _emit(config: RunConfig, text_lines: list[str], structured: dict) -> None:
    if config.structured:
        print(json.dumps(structured, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_validate(config: RunConfig, args) -> int:
    try:
        d = load_file(args.file)
    except FileNotFoundError:
        print(f"error: no such file: {args.file}", file=sys.stderr)
        return 1
    except InvalidDistribution as exc:
        print(f"invalid distribution: {exc}", file=sys.stderr)
        return 1
    n = d.variables.n
    k = len(d.support())
    _emit(
        config,
        [f"ok: {n} variables, {k} support points"],
        {"ok": True, "variables": n, "support_points": k},
    )
    return 0


def cmd_pointwise(config: RunConfig, args) -> int:
    d = load_file(args.file)
    r = _parse_realization(args.realization)
    sources = [_parse_source(d, s) for s in args.sources]
    given = _parse_source(d, args.given) if args.given else None
    suffix = f"|{_source_label(d, given)}" if given else ""

    rows: list[tuple[str, float]] = []
    for s in sources:
        if given is None:
            value = surprisal(d, s, r)
        else:
            value = cond_surprisal(d, s, given, r)
        rows.append((f"h{_source_label(d, s)}{suffix}", value))
    if len(sources) >= 2:
        if given is None:
            rows.append((f"union{suffix}", union_content(d, sources, r)))
            rows.append((f"intersection{suffix}", intersection_content(d, sources, r)))
            rows.append((f"synergy{suffix}", synergy_content(d, sources, r)))
        else:
            rows.append((f"union{suffix}", cond_pointwise(d, "union", sources, given, r)))
            rows.append(
                (f"intersection{suffix}", cond_pointwise(d, "intersection", sources, given, r))
            )
            rows.append((f"synergy{suffix}", cond_pointwise(d, "synergy", sources, given, r)))
    if len(sources) == 2:
        a, b = sources
        la, lb = _source_label(d, a), _source_label(d, b)
        if given is None:
            rows.append((f"unique {la} over {lb}{suffix}", unique_content(d, a, b, r)))
            rows.append((f"unique {lb} over {la}{suffix}", unique_content(d, b, a, r)))
            rows.append((f"mutual{suffix}", mutual_content(d, a, b, r)))
        else:
            rows.append(
                (f"unique {la} over {lb}{suffix}", cond_pointwise(d, "unique", [a, b], given, r))
            )
            rows.append(
                (f"unique {lb} over {la}{suffix}", cond_pointwise(d, "unique", [b, a], given, r))
            )
            rows.append((f"mutual{suffix}", cond_mutual_content(d, a, b, given, r)))

    values = dict(rows)
    residual = None
    if len(sources) >= 2:
        whole: frozenset = frozenset().union(*sources)
        if given is None:
            joint = surprisal(d, whole, r)
        else:
            joint = cond_surprisal(d, whole, given, r)
        rows.append((f"h{_source_label(d, whole)}{suffix}", joint))
        residual = abs(joint - values[f"union{suffix}"] - values[f"synergy{suffix}"])

    width = max(len(label) for label, _ in rows)
    lines = [f"pointwise measures at ({args.realization})"]
    lines += [f"{label.ljust(width)}  {_fmt(value)}" for label, value in rows]
    if residual is not None:
        lines.append(f"{'residual'.ljust(width)}  {_fmt_res(residual)}")
    _emit(
        config,
        lines,
        {
            "realization": list(r),
            "measures": [{"name": label, "value": value} for label, value in rows],
            "residual": residual,
        },
    )
    return 0 if residual is None or residual <= config.tolerance else 1


def _mi_rows(d, result) -> list[tuple[str, float]]:
    return [
        ("intersection", result.intersection),
        ("unique_first", result.unique_first),
        ("unique_second", result.unique_second),
        ("synergy", result.synergy),
        ("union", result.union),
        ("joint", result.joint),
        ("coinformation", result.coinformation),
    ]


def _decompose_target(config: RunConfig, args, d: JointDistribution) -> int:
    predictors = _parse_predictors(d, args.predictors)
    if len(predictors) != 2:
        raise ValueError("exactly two predictor sources are required")
    target = _parse_source(d, args.target)
    if args.mode == "pointwise" and not args.realization:
        raise ValueError("pointwise mode needs --realization")
    realization = _parse_realization(args.realization) if args.realization else None
    result = mi_decompose(d, predictors[0], predictors[1], target, realization)
    rows = _mi_rows(d, result)
    residual = abs(result.joint - result.parts_sum())

    mode = "pointwise" if realization is not None else "expected"
    header = (
        f"mutual decomposition [{mode}] predictors "
        f"{_source_label(d, predictors[0])},{_source_label(d, predictors[1])} "
        f"target {_source_label(d, target)}"
    )
    width = max(len(label) for label, _ in rows)
    lines = [header]
    lines += [f"{label.ljust(width)}  {_fmt(value)}" for label, value in rows]
    lines.append(f"{'sum of parts'.ljust(width)}  {_fmt(result.parts_sum())}")
    lines.append(f"{'residual'.ljust(width)}  {_fmt_res(residual)}")
    _emit(
        config,
        lines,
        {
            "mode": mode,
            "rows": [{"name": n, "value": v} for n, v in rows],
            "sum_of_parts": result.parts_sum(),
            "residual": residual,
        },
    )
    return 0 if residual <= config.tolerance else 1


def cmd_decompose(config: RunConfig, args) -> int:
    d = load_file(args.file)
    if args.target or args.predictors:
        if not (args.target and args.predictors):
            raise ValueError("--target and --predictors must be given together")
        return _decompose_target(config, args, d)

    variables = None
    if args.variables:
        variables = [d.variables.index(n.strip()) for n in args.variables.split(",")]
    selected = variables if variables is not None else list(range(d.variables.n))
    names = tuple(d.variables.names[i] for i in selected)
    lattice = enumerate_antichains(len(selected), config.allow_n5)

    if args.mode == "pointwise":
        if not args.realization:
            raise ValueError("pointwise mode needs --realization")
        r = _parse_realization(args.realization)
        partials = decompose_pointwise(d, r, variables=variables, allow_large=config.allow_n5)
        valuation = lattice_valuation(d, lattice, r, variables=selected)
        header = f"pointwise decomposition at ({args.realization})"
    else:
        partials = decompose_expected(d, variables=variables, allow_large=config.allow_n5)
        valuation = expected_valuation(d, variables=variables, allow_large=config.allow_n5)
        header = "expected decomposition"

    rows = decomposition_rows(valuation, partials, names)
    total = partials.total()
    top_value = valuation.values[lattice.top]
    residual = abs(total - top_value)

    label_width = max(len(label) for label, _, _ in rows)
    lines = [header, f"{'node'.ljust(label_width)}  {'value'.rjust(12)}  {'partial'.rjust(12)}"]
    for label, value, partial in rows:
        lines.append(f"{label.ljust(label_width)}  {_fmt(value).rjust(12)}  {_fmt(partial).rjust(12)}")
    lines.append(f"{'sum of partials'.ljust(label_width)}  {_fmt(total).rjust(12)}")
    lines.append(f"{'joint value'.ljust(label_width)}  {_fmt(top_value).rjust(12)}")
    lines.append(f"{'residual'.ljust(label_width)}  {_fmt_res(residual)}")
    _emit(
        config,
        lines,
        {
            "mode": args.mode,
            "rows": [
                {"node": label, "value": value, "partial": partial}
                for label, value, partial in rows
            ],
            "sum_of_partials": total,
            "joint_value": top_value,
            "residual": residual,
        },
    )
    return 0 if residual <= config.tolerance else 1


def cmd_lattice(config: RunConfig, args) -> int:
    lattice = enumerate_antichains(args.n, config.allow_n5)
    dot = to_dot(lattice, kind=args.kind)
    if args.out == "-":
        sys.stdout.write(dot)
    else:
        Path(args.out).write_text(dot, encoding="utf-8")
        print(f"wrote {args.kind} lattice for n={args.n} ({len(lattice)} nodes) to {args.out}")
    return 0


def cmd_eval(config: RunConfig, args) -> int:
    d = load_file(args.file)
    expr = parse_expression(args.expression, d.variables.names)
    given = _parse_source(d, args.given) if args.given else None
    about = _parse_source(d, args.about) if args.about else None
    if given is not None and about is not None:
        raise ValueError("--given and --about are mutually exclusive")

    def at(r) -> float:
        if about is not None:
            return eval_mutual(d, expr, about, r, allow_large=config.allow_n5)
        return eval_expression(d, expr, r, given=given, allow_large=config.allow_n5)

    if args.realization:
        r = _parse_realization(args.realization)
        value = at(r)
        mode = f"at ({args.realization})"
    else:
        value = math.fsum(p * at(r) for r, p in d.support())
        mode = "expected"
    _emit(
        config,
        [f"{args.expression} [{mode}] = {_fmt(value)}"],
        {"expression": args.expression, "mode": mode, "value": value},
    )
    return 0


def cmd_check(config: RunConfig, args) -> int:
    report = checks.run_suite(args.suite, config.seed, config.trials, config.tolerance)
    if config.structured:
        print(json.dumps(report.to_json(), indent=2))
    else:
        sys.stdout.write(report.to_text())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infoshare",
        description=(
            "Non-negative pointwise information measures, antichain lattices, "
            "and partial-information decompositions of discrete joint distributions."
        ),
    )
    parser.add_argument("--base", choices=sorted(_BASES), default="2",
                        help="log base for information units (default: 2)")
    parser.add_argument("--tol", type=float, default=1e-9,
                        help="tolerance for identity checks (default: 1e-9)")
    parser.add_argument("--seed", type=int, default=0, help="master RNG seed")
    parser.add_argument("--trials", type=int, default=1000,
                        help="trial count for randomized suites")
    parser.add_argument("--allow-n5", action="store_true",
                        help="permit five-variable lattices (7579 nodes)")
    parser.add_argument("--format", choices=("text", "structured"), default="text",
                        dest="fmt", help="output format")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a distribution file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("pointwise", help="pointwise measures at one realization")
    p.add_argument("file")
    p.add_argument("--realization", required=True, help="comma-separated categories")
    p.add_argument("--sources", nargs="+", required=True,
                   help="sources as comma-joined variable names, e.g. X Y or X,Y Z")
    p.add_argument("--given", help="conditioning source")
    p.set_defaults(func=cmd_pointwise)

    p = sub.add_parser("decompose", help="lattice or predictor/target decomposition")
    p.add_argument("file")
    p.add_argument("--mode", choices=("pointwise", "expected"), default="expected")
    p.add_argument("--realization", help="required for pointwise mode")
    p.add_argument("--variables", help="comma-separated variable subset")
    p.add_argument("--target", help="target source (variable names)")
    p.add_argument("--predictors", help="two predictor sources, e.g. X,Y or X;Y,Z")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("lattice", help="export a lattice as DOT")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("redundancy", "sharing"), default="redundancy")
    p.add_argument("--out", default="-", help="output path, - for stdout")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("eval", help="evaluate an information-sharing expression")
    p.add_argument("file")
    p.add_argument("expression")
    p.add_argument("--realization", help="pointwise evaluation site; omit for expected")
    p.add_argument("--given", help="conditioning source")
    p.add_argument("--about", help="target source for a mutual-information reading")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="run a randomized verification suite")
    p.add_argument("--suite", choices=checks.SUITES, required=True)
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            base=_BASES[args.base],
            tolerance=args.tol,
            seed=args.seed,
            trials=args.trials,
            allow_n5=args.allow_n5,
            structured=args.fmt == "structured",
        )
        set_log_base(config.base)
        return args.func(config, args)
    except (InvalidDistribution, ZeroMass, ExpressionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
