"""Deterministic renderers: Markdown tables, CSV, DOT and JSON.

Elements print in bracket form ``[m,n,l]`` (high coefficient first); points
whose coordinates lie in the prime field print as bare residues, and the point
at infinity prints as ``(inf,inf)``.
"""

from __future__ import annotations

import csv
import io
import json
from itertools import groupby

from .cusps import (
    classes_over, cusp_inventory, cusps_over, delta_orbits, al_on_cusp, quadratic_cusp_images, x1_cusps,
)
from .ec_group import Point, format_point
from .finite_field import format_element
from .models import RationalTorsionTable
from .obstruction import BLACK, BranchReport, CandidateRow, ObstructionReport
from .twists import TwistPair

STAR = "(*)"


def markdown_table(header: list[str], body: list[list[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(row) + " |" for row in body]
    return "\n".join(lines) + "\n"


def fmt_coord(c, compact: bool) -> str:
    return "inf" if c is None else format_element(c, compact=compact)


def _rational(P: Point) -> bool:
    return P.is_infinity or (P.x.in_prime_field() and P.y.in_prime_field())


def fmt_point(P: Point) -> str:
    return format_point(P, compact=_rational(P))


def marks_discriminate(rows) -> bool:
    marks = {r.marked for r in rows if r.is_candidate}
    return len(marks) > 1


# -- point tables ----------------------------------------------------------------


def points_table(rows: list[CandidateRow]) -> str:
    """One line per x-value: X, Y1, Y2, j, phi(X,Y1), phi(X,Y2).

    Rows whose j-map degenerates show ``-`` for j and leave the trace columns
    empty; a single root is listed as both Y1 and Y2.
    """
    star = marks_discriminate(rows)
    body = []
    for _, group in groupby(rows, key=lambda r: r.point.x):
        group = list(group)
        first = group[0]
        compact = first.point.is_infinity or first.point.x.in_prime_field()
        ys = [r.point.y for r in group] * (2 if len(group) == 1 else 1)
        line = [fmt_coord(first.point.x, compact), fmt_coord(ys[0], compact), fmt_coord(ys[1], compact)]
        if first.is_candidate:
            j = format_element(first.j) + (STAR if star and first.marked else "")
            traces = [fmt_point(r.trace.point) for r in group] * (2 if len(group) == 1 else 1)
            line += [j, traces[0], traces[1]]
        else:
            line += ["-", "", ""]
        body.append(line)
    return markdown_table(["X", "Y1", "Y2", "j", "phi(X,Y1)", "phi(X,Y2)"], body)


def points_csv(rows: list[CandidateRow]) -> str:
    out = io.StringIO()
    w = csv.writer(out, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writerow(["index", "x", "y", "j", "marked", "phi_x", "phi_y", "forbidden", "color"])
    for r in rows:
        x = fmt_coord(r.point.x, False)
        y = fmt_coord(r.point.y, False)
        if r.is_candidate:
            t = r.trace.point
            w.writerow([r.index, x, y, format_element(r.j), str(r.marked).lower(),
                        fmt_coord(t.x, False), fmt_coord(t.y, False), str(r.trace.forbidden).lower(), r.color])
        else:
            w.writerow([r.index, x, y, "-", "", "", "", "", ""])
    return out.getvalue()


def points_json(rows: list[CandidateRow]) -> list[dict]:
    out = []
    for r in rows:
        d = {"index": r.index, "point": [fmt_coord(r.point.x, False), fmt_coord(r.point.y, False)]}
        if r.is_candidate:
            d.update(j=format_element(r.j), marked=r.marked, trace=fmt_point(r.trace.point),
                     forbidden=r.trace.forbidden, color=r.color)
        out.append(d)
    return out


# -- twists ----------------------------------------------------------------------


def twist_table(pairs: list[TwistPair], N: int) -> str:
    marked = [any(s.exponent % N == 0 for s in p.structures) for p in pairs]
    star = len(set(marked)) > 1
    body = [
        [format_element(p.j) + (STAR if star and m else ""), str(p.structures[0]), str(p.structures[1])]
        for p, m in zip(pairs, marked)
    ]
    return markdown_table(["j", "E1", "E2"], body)


def twist_csv(pairs: list[TwistPair], N: int) -> str:
    out = io.StringIO()
    w = csv.writer(out, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writerow(["j", "E1", "E2", "order1", "order2", "marked"])
    for p in pairs:
        s1, s2 = p.structures
        w.writerow([format_element(p.j), str(s1), str(s2), s1.order, s2.order,
                    str(s1.exponent % N == 0 or s2.exponent % N == 0).lower()])
    return out.getvalue()


def twist_json(pairs: list[TwistPair], N: int) -> list[dict]:
    return [
        {"j": format_element(p.j), "E1": str(p.structures[0]), "E2": str(p.structures[1]),
         "orders": list(p.orders), "marked": any(s.exponent % N == 0 for s in p.structures)}
        for p in pairs
    ]


# -- involutions and graphs ------------------------------------------------------


def involution_table(rows: list[CandidateRow], involutions: list[str]) -> str:
    header = ["P", "X(P)", "Y(P)"]
    for w in involutions:
        header += [f"X({w}(P))", f"Y({w}(P))"]
    body = []
    for r in rows:
        if not r.is_candidate:
            continue
        line = [str(r.index), format_element(r.point.x), format_element(r.point.y)]
        for w in involutions:
            Q = r.images[w]
            line += [fmt_coord(Q.x, False), fmt_coord(Q.y, False)]
        body.append(line)
    return markdown_table(header, body)


def figure_edges(branch: BranchReport) -> str:
    """Vertex colors, then one ``edge v w(v)`` line per vertex and involution."""
    g = branch.graph
    lines = [f"vertex {v} {g.color(v)}" for v in sorted(g.rows)]
    for w in g.involutions:
        lines += [f"edge {v} {g.images[v, w]}" for v in sorted(g.rows)]
    return "\n".join(lines) + "\n"


def graph_dot(branch: BranchReport, name: str = "G") -> str:
    g = branch.graph
    lines = [f"graph {name} {{", "  node [shape=circle, style=filled];"]
    for v in sorted(g.rows):
        color = g.color(v)
        font = "white" if color == BLACK else "black"
        lines.append(f'  {v} [fillcolor={color}, fontcolor={font}];')
    for u, v, key in sorted(g.graph.edges(keys=True)):
        lines.append(f'  {u} -- {v} [label="{key}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def verdict_text(report: ObstructionReport) -> str:
    lines = [f"model {report.model_id} over F_{report.p}^{report.n}, target order {report.target}"]
    if report.hasse_excluded:
        lines.append(f"Hasse bound excludes a point of order {report.target}: PASS")
    for b in report.branches:
        r = b.result
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"branch {b.branch}: {status}")
        lines.append(f"  white: {', '.join(map(str, r.whites)) or 'none'}")
        if r.survivors:
            lines.append(f"  surviving white vertices: {', '.join(map(str, r.survivors))}")
    lines.append(f"verdict: {'PASS' if report.passed else 'FAIL'} ({report.assumption})")
    return "\n".join(lines) + "\n"


# -- torsion and cusps -----------------------------------------------------------


def torsion_table(table: RationalTorsionTable) -> str:
    body = [[str(P), str(table.orders[P])] for P in table.points]
    return markdown_table(["point", "order"], body) + f"\nstructure: {table.structure}\n"


def torsion_csv(table: RationalTorsionTable) -> str:
    out = io.StringIO()
    w = csv.writer(out, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writerow(["point", "order"])
    for P in table.points:
        w.writerow([str(P), table.orders[P]])
    return out.getvalue()


def torsion_json(table: RationalTorsionTable) -> dict:
    return {"points": [str(P) for P in table.points],
            "orders": {str(P): table.orders[P] for P in table.points},
            "structure": str(table.structure)}


def cusp_data(model) -> dict:
    N, delta = model.level, model.delta
    seen = set()
    fibers = []
    for c in x1_cusps(N):
        if c in seen:
            continue
        over = cusps_over(N, c)
        seen.update(over)
        orbits = delta_orbits(N, delta, over)
        classes = classes_over(N, delta, c)
        fibers.append({
            "cusp": str(c),
            "level": c.level,
            "x1_cusps": [str(x) for x in over],
            "delta_orbits": [[str(x) for x in o.members] for o in orbits],
            "class_sizes": [k.size for k in classes],
        })
    images = sorted((str(P), name) for P, name in quadratic_cusp_images(model))
    return {
        "level": N,
        "delta": list(delta),
        "inventory": {str(d): k for d, k in cusp_inventory(N).items()},
        "fibers": fibers,
        "atkin_lehner": {w.name: str(al_on_cusp(N, w.level)) for w in model.involutions},
        "quadratic_cusp_images": [list(t) for t in images],
    }


def cusp_markdown(model) -> str:
    d = cusp_data(model)
    out = [f"level {d['level']}, Delta = {{{', '.join(map(str, d['delta']))}}}", ""]
    out.append(markdown_table(["d", "cusps of X_1(N) at level d"], [[k, str(v)] for k, v in d["inventory"].items()]))
    body = []
    for f in d["fibers"]:
        orbits = "; ".join("{" + ", ".join(o) + "}" for o in f["delta_orbits"])
        kind = "quadratic" if all(s == 2 for s in f["class_sizes"]) else (
            "rational" if all(s == 1 for s in f["class_sizes"]) else "mixed")
        body.append([f["cusp"], str(f["level"]), orbits, kind])
    out.append(markdown_table(["X_0(N) cusp", "d", "Delta-orbits", "X_Delta(N) cusps"], body))
    body = [[name, cusp] for name, cusp in d["atkin_lehner"].items()]
    out.append(markdown_table(["involution", "image of +-(1,1)"], body))
    body = [[P, name] for P, name in d["quadratic_cusp_images"]]
    out.append(markdown_table(["point", "quadratic cusp via"], body))
    return "\n".join(out)


def cusp_csv(model) -> str:
    out = io.StringIO()
    w = csv.writer(out, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writerow(["cusp", "level", "delta_orbits", "class_sizes"])
    for f in cusp_data(model)["fibers"]:
        w.writerow([f["cusp"], f["level"], " ; ".join(" ".join(o) for o in f["delta_orbits"]),
                    " ".join(map(str, f["class_sizes"]))])
    return out.getvalue()


def to_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
