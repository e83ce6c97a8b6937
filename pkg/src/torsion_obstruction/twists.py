"""The two quadratic-twist classes of curves over F_q with a given j-invariant."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .ec_group import GroupStructure, WeierstrassCurve
from .errors import InvalidTwistParameter, UnsupportedCharacteristic, UnsupportedJ
from .finite_field import FieldElement, FieldSpec, enumerate_field


@dataclass(frozen=True)
class TwistPair:
    j: FieldElement
    E1: WeierstrassCurve
    E2: WeierstrassCurve

    @property
    def structures(self) -> tuple[GroupStructure, GroupStructure]:
        return self.E1.group_structure, self.E2.group_structure

    @property
    def orders(self) -> tuple[int, int]:
        return self.E1.order, self.E2.order


def default_alpha(spec: FieldSpec) -> FieldElement:
    """Smallest non-square of the field, by bracket order."""
    for x in enumerate_field(spec):
        if x and not x.is_square():
            return x
    raise InvalidTwistParameter(f"{spec} has no non-squares")


def twist_pair(spec: FieldSpec, j, alpha=None) -> TwistPair:
    """Representatives E1, E2 of the two F_q-classes with j-invariant ``j``.

    p = 3 (j != 0):      y^2 = x^3 + x^2 - 1/j  and  y^2 = x^3 + alpha x^2 - alpha^3/j
    p > 3 (j != 0,1728): y^2 = x^3 - 27c x + 54c with c = j/(j - 1728), and its
                         twist with alpha^2, alpha^3 on the two coefficients.
    """
    p = spec.p
    if p == 2:
        raise UnsupportedCharacteristic("characteristic 2 is not supported")
    j = spec(j)
    alpha = default_alpha(spec) if alpha is None else spec(alpha)
    if alpha == 0 or alpha.is_square():
        raise InvalidTwistParameter(f"alpha = {alpha} is a square in {spec}")
    if p == 3:
        if j == 0:
            raise UnsupportedJ("j = 0 has more than two twist classes")
        E1 = WeierstrassCurve(spec, 0, 1, 0, 0, -1 / j)
        E2 = WeierstrassCurve(spec, 0, alpha, 0, 0, -(alpha**3) / j)
    else:
        if j == 0 or j == spec(1728):
            raise UnsupportedJ(f"j = {j} has more than two twist classes")
        c = j / (j - 1728)
        E1 = WeierstrassCurve(spec, 0, 0, 0, -27 * c, 54 * c)
        E2 = WeierstrassCurve(spec, 0, 0, 0, -27 * c * alpha**2, 54 * c * alpha**3)
    return TwistPair(j, E1, E2)


def mark_j(spec: FieldSpec, j, N: int, alpha=None) -> bool:
    """True iff some twist with this j has a point of order N (N divides its exponent)."""
    pair = twist_pair(spec, j, alpha)
    return any(s.exponent % N == 0 for s in pair.structures)


def twist_order_sum_holds(spec: FieldSpec, j, alpha=None) -> bool:
    """|E1(F_q)| + |E2(F_q)| == 2q + 2."""
    pair = twist_pair(spec, j, alpha)
    return sum(pair.orders) == 2 * spec.order + 2


def twist_table(spec: FieldSpec, js: Iterable, alpha=None) -> list[TwistPair]:
    """Twist pairs for the distinct values of ``js``, in bracket order."""
    distinct = sorted({spec(j) for j in js})
    return [twist_pair(spec, j, alpha) for j in distinct]


def valid_js(spec: FieldSpec) -> list[FieldElement]:
    """Every j for which ``twist_pair`` applies."""
    excluded = {spec.zero, spec(1728)}
    return [j for j in enumerate_field(spec) if j not in excluded]
