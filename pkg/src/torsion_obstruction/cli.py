"""Command-line front end.

Exit codes: 0 verified / output produced, 1 obstruction fails or ``--expect``
mismatch, 2 usage or configuration error, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import csv
import difflib
import io
import sys
from dataclasses import dataclass
from pathlib import Path

from . import reports
from .errors import (
    BadPrime, EnumerationTooLarge, InvalidDelta, InvalidDivisor, InvalidElement, InvalidFieldSpec,
    InvalidTwistParameter, ModelConfigError, NotOnCurve, SingularCurve, UnsupportedCharacteristic,
    UnsupportedJ, UnsupportedLevel,
)
from .finite_field import BUDGET_ENV, FieldSpec, parse_element
from .models import ModularCurveModel, get_model, rational_torsion
from .obstruction import build_rows, run_obstruction
from .twists import twist_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

FORMATS = ("markdown", "csv", "dot", "json")

USAGE_ERRORS = (
    BadPrime, EnumerationTooLarge, InvalidDelta, InvalidDivisor, InvalidElement, InvalidFieldSpec,
    InvalidTwistParameter, ModelConfigError, NotOnCurve, SingularCurve, UnsupportedCharacteristic,
    UnsupportedJ, UnsupportedLevel,
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    model: ModularCurveModel
    p: int
    n: int
    modulus: tuple[int, ...] | None
    target: int
    format: str
    branch: str | None

    @classmethod
    def from_args(cls, args) -> RunConfig:
        model = get_model(args.model)
        r = model.reduction
        if r is None and None in (args.p, args.target):
            raise UsageError(f"model {model.id} has no default reduction; pass --p and --target")
        p = args.p if args.p is not None else r.p
        n = args.ext if args.ext is not None else (r.n if r and r.p == p else 1)
        target = args.target if args.target is not None else r.target_order
        modulus = None
        if args.modulus:
            try:
                modulus = tuple(int(c) for c in args.modulus.split(","))
            except ValueError:
                raise UsageError(f"--modulus takes comma-separated integers, got {args.modulus!r}") from None
        elif r is not None and (r.p, r.n) == (p, n):
            modulus = r.modulus
        if target % p == 0:
            raise UsageError(f"p = {p} divides the target order {target}")
        if args.format not in FORMATS:
            raise UsageError(f"unknown format {args.format!r}")
        branch = args.branch
        if branch == "both":
            branch = None
        elif branch is not None:
            model.branch(branch)
        return cls(model, p, n, modulus, target, args.format, branch)

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec(self.p, self.n, self.modulus)

    def single_branch(self) -> str:
        return self.branch if self.branch is not None else next(iter(self.model.branches))


def _rows(cfg: RunConfig, branch: str | None = None):
    curve = cfg.model.reduced(cfg.spec)
    return build_rows(cfg.model, cfg.p, cfg.n, cfg.target, branch or cfg.single_branch(), curve=curve)


def _reject(cfg: RunConfig, *formats: str) -> None:
    if cfg.format in formats:
        raise UsageError(f"format {cfg.format} is not available for this command")


# -- commands: each returns (exit status, rendered text) --------------------------


def cmd_enumerate(cfg: RunConfig, args) -> tuple[int, str]:
    _reject(cfg, "dot")
    rows = _rows(cfg)
    if cfg.format == "csv":
        return EXIT_OK, reports.points_csv(rows)
    if cfg.format == "json":
        return EXIT_OK, reports.to_json(reports.points_json(rows))
    return EXIT_OK, reports.points_table(rows)


def cmd_twists(cfg: RunConfig, args) -> tuple[int, str]:
    _reject(cfg, "dot")
    spec = cfg.spec
    if args.j:
        js = [parse_element(spec, t) for t in args.j]
    else:
        js = [r.j for r in _rows(cfg) if r.is_candidate]
    r = cfg.model.reduction
    alpha = args.alpha if args.alpha is not None else (r.alpha if r and (r.p, r.n) == (cfg.p, cfg.n) else None)
    pairs = twist_table(spec, js, alpha)
    if cfg.format == "csv":
        return EXIT_OK, reports.twist_csv(pairs, cfg.target)
    if cfg.format == "json":
        return EXIT_OK, reports.to_json(reports.twist_json(pairs, cfg.target))
    return EXIT_OK, reports.twist_table(pairs, cfg.target)


def cmd_cusps(cfg: RunConfig, args) -> tuple[int, str]:
    _reject(cfg, "dot")
    if cfg.format == "csv":
        return EXIT_OK, reports.cusp_csv(cfg.model)
    if cfg.format == "json":
        return EXIT_OK, reports.to_json(reports.cusp_data(cfg.model))
    return EXIT_OK, reports.cusp_markdown(cfg.model)


def cmd_trace(cfg: RunConfig, args) -> tuple[int, str]:
    _reject(cfg, "dot")
    names = [cfg.branch] if cfg.branch else list(cfg.model.branches)
    per_branch = {name: [r for r in _rows(cfg, name) if r.is_candidate] for name in names}
    first = per_branch[names[0]]
    header = ["P", "X", "Y", "phi(P)"] + names
    body = []
    for i, r in enumerate(first):
        line = [str(r.index), reports.fmt_coord(r.point.x, False), reports.fmt_coord(r.point.y, False),
                reports.fmt_point(r.trace.point)]
        line += [per_branch[name][i].trace.label for name in names]
        body.append(line)
    if cfg.format == "json":
        data = [dict(zip(header, line)) for line in body]
        return EXIT_OK, reports.to_json(data)
    if cfg.format == "csv":
        out = io.StringIO()
        w = csv.writer(out, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        w.writerow(header)
        for line in body:
            w.writerow([int(line[0])] + line[1:])
        return EXIT_OK, out.getvalue()
    return EXIT_OK, reports.markdown_table(header, body)


def cmd_torsion(cfg: RunConfig, args) -> tuple[int, str]:
    _reject(cfg, "dot")
    table = rational_torsion(cfg.model.equation)
    if cfg.format == "csv":
        return EXIT_OK, reports.torsion_csv(table)
    if cfg.format == "json":
        return EXIT_OK, reports.to_json(reports.torsion_json(table))
    return EXIT_OK, reports.torsion_table(table)


def cmd_graph(cfg: RunConfig, args) -> tuple[int, str]:
    report = run_obstruction(cfg.model, cfg.p, cfg.n, cfg.target, cfg.branch, cfg.modulus)
    if report.hasse_excluded:
        return EXIT_OK, reports.verdict_text(report)
    if cfg.format == "dot":
        return EXIT_OK, "".join(reports.graph_dot(b, b.branch) for b in report.branches)
    if cfg.format == "json":
        return EXIT_OK, reports.to_json(report.to_dict())
    if cfg.format == "csv":
        raise UsageError("format csv is not available for this command")
    if args.edges:
        return EXIT_OK, "".join(reports.figure_edges(b) for b in report.branches)
    b = report.branches[0]
    return EXIT_OK, reports.involution_table(b.rows, [w.name for w in cfg.model.involutions])


def cmd_verify(cfg: RunConfig, args) -> tuple[int, str]:
    _reject(cfg, "csv")
    report = run_obstruction(cfg.model, cfg.p, cfg.n, cfg.target, cfg.branch, cfg.modulus)
    status = EXIT_OK if report.passed else EXIT_FAIL
    if cfg.format == "json":
        return status, reports.to_json(report.to_dict())
    if cfg.format == "dot":
        return status, "".join(reports.graph_dot(b, b.branch) for b in report.branches)
    return status, reports.verdict_text(report)


COMMANDS = {
    "enumerate": (cmd_enumerate, "points, j-invariants and trace values over F_q"),
    "twists": (cmd_twists, "group structures of the two twists for each j"),
    "cusps": (cmd_cusps, "cusp inventory, Delta-orbits and quadratic cusps"),
    "trace": (cmd_trace, "trace values and their classification per branch"),
    "torsion": (cmd_torsion, "rational torsion of the model (Lutz-Nagell)"),
    "graph": (cmd_graph, "involution images and the black/white graph"),
    "verify": (cmd_verify, "run the full elimination and report the verdict"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torsion-obstruction",
        description="Reduction-mod-p elimination of torsion on genus-one modular curves.",
        epilog=f"The enumeration budget (largest field size) can be raised with ${BUDGET_ENV}.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--model", default="x0_32", help="built-in model id or path to a model JSON file")
        p.add_argument("--p", type=int, help="residue characteristic (default: the model's)")
        p.add_argument("--ext", type=int, help="extension degree n of F_{p^n}")
        p.add_argument("--modulus", help="defining polynomial, low-to-high comma-separated coefficients")
        p.add_argument("--target", type=int, help="torsion order N to eliminate")
        p.add_argument("--format", default="markdown", choices=FORMATS)
        p.add_argument("--branch", help="involution branch hypothesis, or 'both'")
        p.add_argument("--expect", type=Path, help="compare output against this file; exit 1 on mismatch")
        p.add_argument("--output", type=Path, help="write output to a file instead of stdout")
        if name == "twists":
            p.add_argument("--j", action="append", help="j-invariant to tabulate (repeatable)")
            p.add_argument("--alpha", type=int, help="non-square used for the second twist")
        if name == "graph":
            p.add_argument("--edges", action="store_true", help="print vertex colors and edge lists")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig.from_args(args)
        status, text = COMMANDS[args.command][0](cfg, args)
    except (UsageError, *USAGE_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # invariant breaches and anything unexpected
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    if args.output:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)
    if args.expect is not None:
        try:
            expected = args.expect.read_text()
        except OSError as exc:
            print(f"error: cannot read {args.expect}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        if expected != text:
            diff = difflib.unified_diff(expected.splitlines(True), text.splitlines(True), str(args.expect), "output")
            sys.stderr.writelines(diff)
            return EXIT_FAIL
    return status


if __name__ == "__main__":
    sys.exit(main())
