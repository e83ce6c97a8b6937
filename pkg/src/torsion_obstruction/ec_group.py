"""Long Weierstrass curves over Q or a finite field, and their group law.

Curves are y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6.  Coordinates live in
the curve's base: ``QQ`` (``fractions.Fraction`` values) or a ``FieldSpec``.
Group orders and structures are found by exhaustive enumeration, which is all
the fields in this package ever need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, NamedTuple, Union

from .errors import NotOnCurve, SingularCurve
from .finite_field import FieldElement, FieldSpec, enumerate_field, sqrt


class RationalField:
    """Marker for the base field Q; calling it coerces to ``Fraction``."""

    characteristic = 0

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    def __repr__(self):
        return "QQ"

    __str__ = __repr__

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()

Base = Union[RationalField, FieldSpec]


@dataclass(frozen=True)
class Point:
    """An affine point, or the point at infinity when both coordinates are None."""

    x: object = None
    y: object = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __iter__(self):
        return iter((self.x, self.y))

    def __str__(self):
        return format_point(self)


INFINITY = Point()


def format_point(P: Point, compact: bool = True) -> str:
    if P.is_infinity:
        return "(inf,inf)"
    return f"({_fmt(P.x, compact)},{_fmt(P.y, compact)})"


def _fmt(c, compact: bool) -> str:
    if isinstance(c, FieldElement):
        from .finite_field import format_element

        return format_element(c, compact=compact)
    return str(c)


class GroupStructure(NamedTuple):
    """Z/n2 x Z/n1 with n2 | n1; ``n2 == 1`` means the cyclic group Z/n1."""

    n2: int
    n1: int

    @property
    def order(self) -> int:
        return self.n1 * self.n2

    @property
    def exponent(self) -> int:
        return self.n1

    def __str__(self):
        if self.n2 == 1:
            return f"Z/{self.n1}"
        return f"Z/{self.n2} x Z/{self.n1}"

    @classmethod
    def parse(cls, text: str) -> GroupStructure:
        parts = [int(t.strip().removeprefix("Z/")) for t in text.split("x")]
        if len(parts) == 1:
            return cls(1, parts[0])
        return cls(parts[0], parts[1])


@dataclass(frozen=True)
class WeierstrassCurve:
    base: Base
    a1: object = 0
    a2: object = 0
    a3: object = 0
    a4: object = 0
    a6: object = 0

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, self.base(getattr(self, name)))
        if self.discriminant == 0:
            raise SingularCurve(f"{self} is singular")

    @property
    def coefficients(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    # -- standard invariants ---------------------------------------------------

    @property
    def b_invariants(self) -> tuple:
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c4(self):
        b2, b4, _, _ = self.b_invariants
        return b2 * b2 - 24 * b4

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self):
        return self.c4**3 / self.discriminant

    # -- points ----------------------------------------------------------------

    def point(self, x, y) -> Point:
        P = Point(self.base(x), self.base(y))
        if not self.contains(P):
            raise NotOnCurve(f"{P} is not on {self}")
        return P

    def contains(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        a1, a2, a3, a4, a6 = self.coefficients
        return y * y + a1 * x * y + a3 * y == x**3 + a2 * x * x + a4 * x + a6

    def _check(self, P: Point) -> None:
        if not self.contains(P):
            raise NotOnCurve(f"{P} is not on {self}")

    def neg(self, P: Point) -> Point:
        self._check(P)
        if P.is_infinity:
            return P
        return Point(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: Point, Q: Point) -> Point:
        self._check(P)
        self._check(Q)
        return self._add(P, Q)

    def _add(self, P: Point, Q: Point) -> Point:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        a1, a2, a3, a4, _ = self.coefficients
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return INFINITY
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return Point(x3, y3)

    def sub(self, P: Point, Q: Point) -> Point:
        return self.add(P, self.neg(Q))

    def mul(self, k: int, P: Point) -> Point:
        """Scalar multiple by double-and-add; negative k goes through ``neg``."""
        self._check(P)
        if k < 0:
            return self.mul(-k, self.neg(P))
        result, addend = INFINITY, P
        while k:
            if k & 1:
                result = self._add(result, addend)
            addend = self._add(addend, addend)
            k >>= 1
        return result

    # -- finite-field enumeration ----------------------------------------------

    def _require_finite(self) -> FieldSpec:
        if not isinstance(self.base, FieldSpec):
            raise TypeError(f"{self} is not defined over a finite field")
        return self.base

    def points(self, budget: int | None = None) -> list[Point]:
        """All points over the base field: infinity, then by x, then by y."""
        if budget is None:
            return list(self._points)
        return ec_enumerate(self, budget)

    @cached_property
    def _points(self) -> tuple[Point, ...]:
        return tuple(ec_enumerate(self))

    @cached_property
    def order(self) -> int:
        return len(self._points)

    def point_order(self, P: Point) -> int:
        """Exact additive order, by stripping prime factors from the group order."""
        self._check(P)
        n = self.order
        for prime, _ in _factor(n):
            while n % prime == 0 and self.mul(n // prime, P).is_infinity:
                n //= prime
        return n

    @cached_property
    def exponent(self) -> int:
        """Group exponent: strip each prime from |E| while it kills every point."""
        points = self._points
        e = len(points)
        for prime, _ in _factor(e):
            while e % prime == 0 and all(self.mul(e // prime, P).is_infinity for P in points):
                e //= prime
        return e

    @cached_property
    def group_structure(self) -> GroupStructure:
        """Invariant factors (n2, n1): n1 is the exponent, n2 = |E| / n1."""
        q = self._require_finite().order
        n1 = self.exponent
        n2, rem = divmod(self.order, n1)
        if rem or n1 % n2 or (q - 1) % n2:
            raise ArithmeticError(f"inconsistent invariant factors ({n2}, {n1}) for {self}")
        return GroupStructure(n2, n1)

    def __str__(self):
        terms = ["y^2"]
        if self.a1:
            terms.append(f"+ {self.a1}*x*y")
        if self.a3:
            terms.append(f"+ {self.a3}*y")
        rhs = ["x^3"]
        for c, mono in ((self.a2, "x^2"), (self.a4, "x"), (self.a6, "")):
            if c:
                rhs.append(f"+ {c}*{mono}" if mono else f"+ {c}")
        return " ".join(terms) + " = " + " ".join(rhs) + f" over {self.base}"


def _factor(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def listing_order(roots: Iterable[FieldElement]) -> list[FieldElement]:
    """Order the y-values above one x the way the point tables list them.

    A root outside the prime field comes first when its norm to F_p lies in
    1..(p-1)/2; prime-field roots are listed larger residue first.  For odd
    extension degree the norm of -y is minus the norm of y, so exactly one root
    of each pair qualifies.
    """
    roots = list(roots)
    if len(roots) < 2:
        return roots
    r = roots[0]
    p = r.spec.p
    if r.in_prime_field():
        return sorted(roots, key=lambda y: -y.value)
    first = r if 1 <= r.norm().value <= (p - 1) // 2 else -r
    return [first, -first]


def ec_enumerate(curve: WeierstrassCurve, budget: int | None = None) -> list[Point]:
    """All points of a curve over F_q, starting with the point at infinity."""
    spec = curve._require_finite()
    a1, a2, a3, a4, a6 = curve.coefficients
    points = [INFINITY]
    for x in enumerate_field(spec, budget):
        rhs = x**3 + a2 * x * x + a4 * x + a6
        if spec.p == 2:
            ys = [y for y in enumerate_field(spec, budget) if y * y + a1 * x * y + a3 * y == rhs]
        else:
            # (y + (a1 x + a3)/2)^2 = rhs + (a1 x + a3)^2 / 4
            h = (a1 * x + a3) / 2
            ys = [r - h for r in listing_order(sqrt(rhs + h * h))]
        points.extend(Point(x, y) for y in ys)
    return points


# -- functional aliases --------------------------------------------------------


def ec_add(curve: WeierstrassCurve, P: Point, Q: Point) -> Point:
    return curve.add(P, Q)


def ec_neg(curve: WeierstrassCurve, P: Point) -> Point:
    return curve.neg(P)


def ec_scalar_mul(curve: WeierstrassCurve, k: int, P: Point) -> Point:
    return curve.mul(k, P)


def point_order(curve: WeierstrassCurve, P: Point) -> int:
    return curve.point_order(P)


def group_structure(curve: WeierstrassCurve) -> GroupStructure:
    return curve.group_structure


def hasse_admits_order(q: int, N: int) -> bool:
    """True iff N <= (1 + sqrt(q))^2, decided in exact integer arithmetic."""
    slack = N - 1 - q
    return slack <= 0 or slack * slack <= 4 * q


def hasse_window(q: int) -> tuple[float, float]:
    s = math.sqrt(q)
    return (1 - s) ** 2, (1 + s) ** 2
