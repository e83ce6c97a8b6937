"""End-to-end elimination of candidate torsion points on a reduced model.

Rows are built for every F_q-point of the reduced model.  Rows with a usable
j-invariant are the candidates; each is marked when some curve with that j
can carry a point of the target order, and colored black when it is unmarked
or its trace value is forbidden.  The involutions of a branch join candidates
into a graph, and the branch is eliminated when every white vertex has a black
neighbor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import networkx as nx

from .ec_group import INFINITY, Point, WeierstrassCurve, hasse_admits_order
from .errors import CuspidalOrBadPoint, GraphClosureError, InternalError, UnsupportedJ
from .finite_field import FieldSpec, format_element, parse_element
from .frobenius_trace import TraceTarget, classify_trace, trace_map
from .models import ModularCurveModel, apply_involution, j_of_point
from .twists import mark_j

BLACK, WHITE = "black", "white"

ASSUMPTION = (
    "conditional: assumes the Atkin-Lehner involutions of the branch are defined over Q "
    "and act on the model as configured; the verdict checks the finite-field computation only"
)


@dataclass(frozen=True)
class CandidateRow:
    index: int  # 1-based position among candidates; 0 for non-candidate rows
    point: Point
    j: object  # None when the j-map degenerates (cusp or bad point)
    marked: bool
    trace: TraceTarget | None
    images: dict = field(default_factory=dict)
    color: str | None = None

    @property
    def is_candidate(self) -> bool:
        return self.j is not None


def _spec_for(model: ModularCurveModel, p: int, n: int, modulus=None) -> FieldSpec:
    r = model.reduction
    if modulus is None and r is not None and (r.p, r.n) == (p, n):
        modulus = r.modulus
    return FieldSpec(p, n, modulus)


def _alpha_for(model: ModularCurveModel, spec: FieldSpec):
    r = model.reduction
    if r is not None and (r.p, r.n) == (spec.p, spec.n):
        return spec(r.alpha)
    return None


def _mark(spec: FieldSpec, j, N: int, alpha) -> bool:
    # j = 0, 1728 have extra twists; keep such points (marking can only weaken the obstruction)
    try:
        return mark_j(spec, j, N, alpha)
    except UnsupportedJ:
        return True


def build_rows(
    model: ModularCurveModel,
    p: int,
    n: int,
    N: int,
    branch: str | None = None,
    modulus=None,
    curve: WeierstrassCurve | None = None,
) -> list[CandidateRow]:
    """One row per F_q-point (infinity first), in enumeration order."""
    if curve is None:
        curve = model.reduced(_spec_for(model, p, n, modulus))
    spec = curve.base
    alpha = _alpha_for(model, spec)
    marks = lru_cache(maxsize=None)(lambda j: _mark(spec, j, N, alpha))
    model.branch(branch)  # validates the branch name
    rows = []
    index = 0
    for P in curve.points():
        try:
            j = j_of_point(model, P)
        except CuspidalOrBadPoint:
            rows.append(CandidateRow(0, P, None, False, None))
            continue
        index += 1
        marked = marks(j)
        target = classify_trace(model, curve, trace_map(curve, P), branch)
        images = {w.name: apply_involution(model, w.name, P, curve) for w in model.involutions}
        color = WHITE if marked and not target.forbidden else BLACK
        rows.append(CandidateRow(index, P, j, marked, target, images, color))
    return rows


def build_candidates(
    model: ModularCurveModel, p: int, n: int, N: int, branch: str | None = None, modulus=None
) -> list[CandidateRow]:
    """The numbered candidate rows; empty when the Hasse bound excludes order N."""
    if not hasse_admits_order(p**n, N):
        return []
    return [r for r in build_rows(model, p, n, N, branch, modulus) if r.is_candidate]


@dataclass
class InvolutionGraph:
    graph: nx.MultiGraph
    rows: dict[int, CandidateRow]
    involutions: tuple[str, ...]
    images: dict[tuple[int, str], int]  # (vertex, involution) -> vertex

    def color(self, v: int) -> str:
        return self.rows[v].color

    def neighbors(self, v: int) -> list[int]:
        return sorted({self.images[v, w] for w in self.involutions})

    def components(self) -> list[list[int]]:
        return sorted(sorted(c) for c in nx.connected_components(self.graph))

    def fixed_points(self) -> list[tuple[int, str]]:
        return sorted(k for k, v in self.images.items() if k[0] == v)

    def simple(self) -> nx.Graph:
        return nx.Graph(self.graph)


def build_graph(rows, involutions) -> InvolutionGraph:
    """Edges P -- w(P) for each named involution; fixed points become self-loops."""
    cands = {r.index: r for r in rows if r.is_candidate}
    by_point = {r.point: r.index for r in cands.values()}
    g = nx.MultiGraph()
    g.add_nodes_from(sorted(cands))
    images = {}
    for v, r in sorted(cands.items()):
        for w in involutions:
            target = by_point.get(r.images[w])
            if target is None:
                raise GraphClosureError(f"{w}({r.point}) = {r.images[w]} is not a candidate")
            images[v, w] = target
            if v <= target:
                g.add_edge(v, target, key=w, involution=w)
    return InvolutionGraph(g, cands, tuple(involutions), images)


@dataclass(frozen=True)
class EliminationResult:
    branch: str
    passed: bool
    whites: tuple[int, ...]
    blacks: tuple[int, ...]
    survivors: tuple[int, ...]  # white vertices whose neighbors are all white


def verdict(graph: InvolutionGraph, branch: str = "") -> EliminationResult:
    """PASS iff every white vertex has at least one black neighbor."""
    whites = tuple(v for v in sorted(graph.rows) if graph.color(v) == WHITE)
    blacks = tuple(v for v in sorted(graph.rows) if graph.color(v) == BLACK)
    survivors = tuple(v for v in whites if all(graph.color(u) == WHITE for u in graph.neighbors(v)))
    return EliminationResult(branch, not survivors, whites, blacks, survivors)


@dataclass
class BranchReport:
    branch: str
    rows: list[CandidateRow]
    graph: InvolutionGraph
    result: EliminationResult


@dataclass
class ObstructionReport:
    model_id: str
    p: int
    n: int
    target: int
    hasse_excluded: bool
    branches: list[BranchReport]
    assumption: str = ASSUMPTION
    modulus: tuple[int, ...] | None = None

    @property
    def passed(self) -> bool:
        return self.hasse_excluded or all(b.result.passed for b in self.branches)

    def to_dict(self) -> dict:
        return {
            "model": self.model_id,
            "p": self.p,
            "n": self.n,
            "modulus": list(self.modulus) if self.modulus else None,
            "target": self.target,
            "hasse_excluded": self.hasse_excluded,
            "passed": self.passed,
            "assumption": self.assumption,
            "branches": [_branch_to_dict(b) for b in self.branches],
        }

    @classmethod
    def from_dict(cls, d: dict) -> ObstructionReport:
        """Rebuild a report from ``to_dict`` output; graphs and verdicts are recomputed."""
        spec = FieldSpec(d["p"], d["n"], tuple(d["modulus"]) if d.get("modulus") else None)
        branches = []
        for b in d["branches"]:
            rows = [_row_from_dict(spec, r) for r in b["rows"]]
            graph = build_graph(rows, tuple(b["involutions"]))
            branches.append(BranchReport(b["branch"], rows, graph, verdict(graph, b["branch"])))
        report = cls(d["model"], d["p"], d["n"], d["target"], d["hasse_excluded"], branches,
                     d.get("assumption", ASSUMPTION), spec.modulus if d.get("modulus") else None)
        if report.passed != d["passed"]:
            raise InternalError("stored verdict disagrees with the recomputed one")
        return report


def _pt(P: Point):
    return None if P.is_infinity else [format_element(P.x), format_element(P.y)]


def _pt_from(spec: FieldSpec, value) -> Point:
    if value is None:
        return INFINITY
    return Point(parse_element(spec, value[0]), parse_element(spec, value[1]))


def _branch_to_dict(b: BranchReport) -> dict:
    rows = []
    for r in b.rows:
        row = {"index": r.index, "point": _pt(r.point)}
        if r.is_candidate:
            row.update(
                j=format_element(r.j),
                marked=r.marked,
                trace=_pt(r.trace.point),
                forbidden=r.trace.forbidden,
                reason=r.trace.reason,
                images={w: _pt(Q) for w, Q in r.images.items()},
                color=r.color,
            )
        rows.append(row)
    return {
        "branch": b.branch,
        "involutions": list(b.graph.involutions),
        "passed": b.result.passed,
        "whites": list(b.result.whites),
        "survivors": list(b.result.survivors),
        "rows": rows,
    }


def _row_from_dict(spec: FieldSpec, r: dict) -> CandidateRow:
    P = _pt_from(spec, r["point"])
    if "j" not in r:
        return CandidateRow(r["index"], P, None, False, None)
    trace = TraceTarget(_pt_from(spec, r["trace"]), r["forbidden"], r.get("reason"))
    images = {w: _pt_from(spec, Q) for w, Q in r["images"].items()}
    return CandidateRow(r["index"], P, parse_element(spec, r["j"]), r["marked"], trace, images, r["color"])


def branch_names(model: ModularCurveModel, branch: str | None) -> list[str]:
    if branch in (None, "both", "all") and branch not in model.branches:
        return list(model.branches)
    model.branch(branch)
    return [branch]


def run_obstruction(
    model: ModularCurveModel, p: int | None = None, n: int | None = None, N: int | None = None,
    branch: str | None = None, modulus=None,
) -> ObstructionReport:
    r = model.reduction
    p = p if p is not None else r.p
    n = n if n is not None else r.n
    N = N if N is not None else r.target_order
    if not hasse_admits_order(p**n, N):
        return ObstructionReport(model.id, p, n, N, True, [])
    spec = _spec_for(model, p, n, modulus)
    curve = model.reduced(spec)
    reports = []
    for name in branch_names(model, branch):
        rows = build_rows(model, p, n, N, name, curve=curve)
        graph = build_graph(rows, model.branch(name))
        reports.append(BranchReport(name, rows, graph, verdict(graph, name)))
    return ObstructionReport(model.id, p, n, N, False, reports, modulus=spec.modulus)


def check_rows(rows) -> None:
    """Internal invariants of the pipeline; raises InternalError on breach."""
    for r in rows:
        if r.is_candidate and (r.trace is None or r.color not in (BLACK, WHITE)):
            raise InternalError(f"row {r.index} is incomplete")


__all__ = [
    "ASSUMPTION", "BLACK", "WHITE", "BranchReport", "CandidateRow", "EliminationResult", "InvolutionGraph",
    "ObstructionReport", "build_candidates", "build_graph", "build_rows", "branch_names", "check_rows",
    "run_obstruction", "verdict",
]
