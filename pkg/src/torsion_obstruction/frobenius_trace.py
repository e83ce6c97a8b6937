"""Frobenius on points of a curve defined over F_p, and the trace sum
phi(P) = P + Frob(P) + ... + Frob^(n-1)(P), which always lands in E(F_p).
"""

from __future__ import annotations

from dataclasses import dataclass

from .ec_group import INFINITY, Point, WeierstrassCurve
from .errors import InternalError, NotOnCurve
from .models import ModularCurveModel, reduce_point


def _require_prime_field_curve(curve: WeierstrassCurve) -> None:
    if not all(c.in_prime_field() for c in curve.coefficients):
        raise ValueError(f"{curve} is not defined over the prime field")


def frob_point(curve: WeierstrassCurve, P: Point, times: int = 1) -> Point:
    """(x, y) -> (x^p, y^p), applied ``times`` times."""
    _require_prime_field_curve(curve)
    if not curve.contains(P):
        raise NotOnCurve(f"{P} is not on {curve}")
    if P.is_infinity:
        return INFINITY
    return Point(P.x.frobenius(times), P.y.frobenius(times))


def is_frobenius_fixed(curve: WeierstrassCurve, P: Point) -> bool:
    return frob_point(curve, P) == P


def trace_map(curve: WeierstrassCurve, P: Point) -> Point:
    """Sum of the Frobenius conjugates of P over the curve's base field, via the group law."""
    _require_prime_field_curve(curve)
    if not curve.contains(P):
        raise NotOnCurve(f"{P} is not on {curve}")
    total, Q = INFINITY, P
    for _ in range(curve.base.n):
        total = curve._add(total, Q)
        Q = frob_point(curve, Q)
    return total


@dataclass(frozen=True)
class TraceTarget:
    point: Point
    forbidden: bool
    reason: str | None = None  # name of the involution whose cusp image it matches

    @property
    def allowed(self) -> bool:
        return not self.forbidden

    @property
    def label(self) -> str:
        return "forbidden" if self.forbidden else "allowed"


def forbidden_targets(model: ModularCurveModel, curve: WeierstrassCurve, branch: str | None = None) -> dict[Point, str]:
    """Reductions of the quadratic-cusp images of the branch's involutions."""
    members = set(model.branch(branch))
    out = {}
    for P, name in model.quadratic_cusp_images:
        if name in members:
            out.setdefault(reduce_point(P, curve.base), name)
    return out


def classify_trace(model: ModularCurveModel, curve: WeierstrassCurve, t: Point, branch: str | None = None) -> TraceTarget:
    """Forbidden iff t reduces from a quadratic-cusp image of the branch."""
    if not is_frobenius_fixed(curve, t):
        raise InternalError(f"trace value {t} is not F_{curve.base.p}-rational")
    name = forbidden_targets(model, curve, branch).get(t)
    return TraceTarget(t, name is not None, name)
