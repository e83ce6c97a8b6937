"""Exact arithmetic in small finite fields F_{p^n}.

An element of F_{p^n} = F_p[a]/(f(a)) is stored as an integer index whose base-p
digits, most significant first, are the coefficients of a^(n-1), ..., a, 1.  So
the printed form ``[m,n,l]`` of an element of F_{p^3} stands for m*a^2 + n*a + l,
and sorting by index is the lexicographic order of that bracket notation.

Multiplication goes through exp/log tables built from a primitive element; the
fields used here have at most a few thousand elements, so the tables are tiny.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from .errors import (
    DivisionByZero,
    EnumerationTooLarge,
    InvalidElement,
    InvalidFieldSpec,
    SpecMismatch,
)

# Conway polynomials, low-to-high coefficients.
DEFAULT_MODULI = {
    (3, 3): (1, 2, 0, 1),  # x^3 + 2x + 1
    (5, 3): (3, 3, 0, 1),  # x^3 + 3x + 3
}

BUDGET_ENV = "TORSION_OBSTRUCTION_MAX_FIELD"
DEFAULT_BUDGET = 4096
_ADD_TABLE_LIMIT = 1024


def enumeration_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidFieldSpec(f"{BUDGET_ENV} must be an integer, got {raw!r}") from exc


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# -- polynomials over F_p as low-to-high coefficient lists ------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Schoolbook division of polynomials over F_p (low-to-high lists)."""
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        quot[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return quot, a


def _monic_polys(p: int, degree: int) -> Iterator[tuple[int, ...]]:
    for index in range(p**degree):
        low = []
        for _ in range(degree):
            index, r = divmod(index, p)
            low.append(r)
        yield tuple(low) + (1,)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(_trim(list(modulus))) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not poly_divmod(modulus, f, p)[1]:
                return False
    return True


def _first_irreducible(p: int, n: int) -> tuple[int, ...]:
    for f in _monic_polys(p, n):
        if is_irreducible(f, p):
            return f
    raise InvalidFieldSpec(f"no irreducible polynomial of degree {n} over F_{p}")


@dataclass(frozen=True)
class _Tables:
    digits: list[tuple[int, ...]]
    exp: list[int]
    log: list[int]
    neg: list[int]
    add: list[list[int]] | None
    generator: int
    unit_order: int


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^n} presented as F_p[a]/(modulus).

    ``modulus`` lists the coefficients of a monic irreducible polynomial of degree
    ``n`` from the constant term upwards.  When omitted, the Conway polynomial is
    used for F_27 and F_125 and the first irreducible polynomial otherwise.
    """

    p: int
    n: int = 1
    modulus: tuple[int, ...] | None = field(default=None)

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidFieldSpec(f"characteristic {self.p} is not prime")
        if self.n < 1:
            raise InvalidFieldSpec(f"extension degree must be >= 1, got {self.n}")
        modulus = self.modulus
        if modulus is None:
            if self.n == 1:
                modulus = (0, 1)
            else:
                modulus = DEFAULT_MODULI.get((self.p, self.n)) or _first_irreducible(self.p, self.n)
        modulus = tuple(int(c) % self.p for c in modulus)
        if len(modulus) != self.n + 1 or modulus[-1] != 1:
            raise InvalidFieldSpec(f"modulus {modulus} is not monic of degree {self.n}")
        if not is_irreducible(modulus, self.p):
            raise InvalidFieldSpec(f"modulus {modulus} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", modulus)

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        if self.n == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.n}"

    @cached_property
    def _tables(self) -> _Tables:
        p, n, q = self.p, self.n, self.order
        digits = []
        for index in range(q):
            low = []
            for _ in range(n):
                index, r = divmod(index, p)
                low.append(r)
            digits.append(tuple(reversed(low)))
        index_of = {d: i for i, d in enumerate(digits)}

        def mulmod(u: int, v: int) -> int:
            # digits are high-first; convert to low-first lists for the division
            a = list(reversed(digits[u]))
            b = list(reversed(digits[v]))
            prod = [0] * (2 * n - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] = (prod[i + j] + x * y) % p
            rem = poly_divmod(prod, self.modulus, p)[1]
            rem += [0] * (n - len(rem))
            return index_of[tuple(reversed(rem))]

        one = 1
        generator = exp = None
        for g in range(1, q):
            powers = [one]
            cur = g
            while cur != one:
                powers.append(cur)
                cur = mulmod(cur, g)
            if len(powers) == q - 1:
                generator, exp = g, powers
                break
        log = [-1] * q
        for k, e in enumerate(exp):
            log[e] = k

        def add_digits(u, v):
            return index_of[tuple((x + y) % p for x, y in zip(digits[u], digits[v]))]

        neg = [index_of[tuple(-x % p for x in d)] for d in digits]
        add = None
        if q <= _ADD_TABLE_LIMIT:
            add = [[add_digits(u, v) for v in range(q)] for u in range(q)]
        return _Tables(digits, exp, log, neg, add, generator, q - 1)

    # -- element construction ------------------------------------------------

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise SpecMismatch(f"element of {value.spec} used in {self}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise DivisionByZero(f"{value} has no reduction modulo {self.p}")
            r = value.numerator * pow(value.denominator, -1, self.p) % self.p
            return FieldElement(self, r)
        if isinstance(value, str):
            return parse_element(self, value)
        if isinstance(value, (list, tuple)):
            return ff_make(self, value)
        raise InvalidElement(f"cannot build an element of {self} from {value!r}")

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The class of the polynomial variable (``a``); equals 0 when n == 1."""
        if self.n == 1:
            return FieldElement(self, -self.modulus[0] % self.p)
        return FieldElement(self, self.p)

    @property
    def primitive_element(self) -> FieldElement:
        return FieldElement(self, self._tables.generator)

    def prime_field(self) -> FieldSpec:
        return FieldSpec(self.p)


@dataclass(frozen=True, slots=True)
class FieldElement:
    spec: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coefficients of a^(n-1), ..., a, 1 (the bracket notation)."""
        return self.spec._tables.digits[self.value]

    # -- arithmetic ----------------------------------------------------------

    def _other(self, other) -> FieldElement | None:
        if type(other) is FieldElement and other.spec is self.spec:
            return other
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise SpecMismatch(f"cannot combine elements of {self.spec} and {other.spec}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.spec(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        t = self.spec._tables
        if t.add is not None:
            return FieldElement(self.spec, t.add[self.value][o.value])
        p = self.spec.p
        digits = tuple((x + y) % p for x, y in zip(t.digits[self.value], t.digits[o.value]))
        return ff_make(self.spec, digits)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.spec, self.spec._tables.neg[self.value])

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.value == 0 or o.value == 0:
            return self.spec.zero
        t = self.spec._tables
        k = (t.log[self.value] + t.log[o.value]) % t.unit_order
        return FieldElement(self.spec, t.exp[k])

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise DivisionByZero(f"zero has no inverse in {self.spec}")
        t = self.spec._tables
        k = -t.log[self.value] % t.unit_order
        return FieldElement(self.spec, t.exp[k])

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if self.value == 0:
            if e < 0:
                raise DivisionByZero("zero raised to a negative power")
            return self.spec.one if e == 0 else self
        t = self.spec._tables
        k = t.log[self.value] * e % t.unit_order
        return FieldElement(self.spec, t.exp[k])

    def __eq__(self, other):
        if type(other) is FieldElement:
            return self.value == other.value and (self.spec is other.spec or self.spec == other.spec)
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.spec.p and self.value < self.spec.p
        return NotImplemented

    def __hash__(self):
        # prime-field elements compare equal to ints, so they must hash like them
        if self.value < self.spec.p:
            return hash(self.value)
        return hash((self.spec.p, self.spec.n, self.value))

    def __lt__(self, other):
        if not isinstance(other, FieldElement) or other.spec != self.spec:
            return NotImplemented
        return self.value < other.value

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        if not self.in_prime_field():
            raise InvalidElement(f"{self} is not in the prime field")
        return self.value

    # -- field-theoretic maps ------------------------------------------------

    def frobenius(self, times: int = 1) -> FieldElement:
        return self ** (self.spec.p**times)

    def in_prime_field(self) -> bool:
        return self.value < self.spec.p

    def norm(self) -> FieldElement:
        """Norm to the prime field, as an element of this field."""
        q, p = self.spec.order, self.spec.p
        return self ** ((q - 1) // (p - 1))

    def trace(self) -> FieldElement:
        total = self.spec.zero
        for i in range(self.spec.n):
            total = total + self.frobenius(i)
        return total

    def is_square(self) -> bool:
        if self.value == 0 or self.spec.p == 2:
            return True
        return self.spec._tables.log[self.value] % 2 == 0

    def sqrt(self) -> tuple[FieldElement, ...]:
        return sqrt(self)

    def __repr__(self):
        return f"FieldElement({self.spec}, {format_element(self)})"

    def __str__(self):
        return format_element(self)


# -- functional surface -------------------------------------------------------


def ff_make(spec: FieldSpec, coeffs: Sequence[int]) -> FieldElement:
    """Build an element from bracket coefficients (highest power first).

    Shorter lists are padded with leading zeros, so ``[3]`` is the constant 3.
    """
    coeffs = list(coeffs)
    if len(coeffs) > spec.n:
        raise InvalidElement(f"{len(coeffs)} coefficients given for a degree-{spec.n} field")
    index = 0
    for c in [0] * (spec.n - len(coeffs)) + coeffs:
        index = index * spec.p + int(c) % spec.p
    return FieldElement(spec, index)


def ff_add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def ff_mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def ff_neg(x: FieldElement) -> FieldElement:
    return -x


def ff_inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def frobenius(x: FieldElement) -> FieldElement:
    return x.frobenius()


def sqrt(x: FieldElement) -> tuple[FieldElement, ...]:
    """Both square roots ``(r, -r)``, ``(0,)`` for zero, ``()`` for a non-square.

    ``r`` is g^(k/2) where g is the table's primitive element and x = g^k.
    """
    spec = x.spec
    if x.value == 0:
        return (x,)
    if spec.p == 2:
        return (x ** (spec.order // 2),)
    t = spec._tables
    k = t.log[x.value]
    if k % 2:
        return ()
    r = FieldElement(spec, t.exp[k // 2])
    return (r, -r)


def enumerate_field(spec: FieldSpec, budget: int | None = None) -> Iterator[FieldElement]:
    """Every element once, in lexicographic bracket order."""
    limit = enumeration_budget() if budget is None else budget
    if spec.order > limit:
        raise EnumerationTooLarge(f"{spec} has {spec.order} elements, budget is {limit}")
    for index in range(spec.order):
        yield FieldElement(spec, index)


def format_element(x: FieldElement, compact: bool = False) -> str:
    """``[m,n,l]`` for extension fields, a bare residue for F_p.

    With ``compact`` set, elements of the prime subfield are printed bare, the
    way the point tables write them.
    """
    if x.spec.n == 1 or (compact and x.in_prime_field()):
        return str(x.value)
    return "[" + ",".join(str(c) for c in x.coeffs) + "]"


_BRACKET = re.compile(r"^\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]$")


def parse_element(spec: FieldSpec, text: str) -> FieldElement:
    text = text.strip()
    m = _BRACKET.match(text)
    if m:
        return ff_make(spec, [int(c) for c in m.group(1).split(",")])
    try:
        return spec(int(text))
    except ValueError:
        raise InvalidElement(f"cannot parse {text!r} as an element of {spec}") from None
