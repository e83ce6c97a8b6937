"""Cusp combinatorics for X_1(N) -> X_Delta(N) -> X_0(N).

A cusp of X_1(N) is a class +-(x, y) with y mod N and x mod d = gcd(y, N),
gcd(x, d) = 1.  The canonical representative takes x in 1..d and picks, of the
pair (x, y) and (-x, -y), the one with the smaller (y, x).  The diamond
operators act by (x, y) -> (a x, a^-1 y); orbits of a subgroup Delta containing
-1 are the cusps of X_Delta(N), orbits of all units the cusps of X_0(N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidDelta, InvalidDivisor, UnsupportedLevel


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def units(N: int) -> list[int]:
    return [a for a in range(1, N) if math.gcd(a, N) == 1]


@dataclass(frozen=True, order=True)
class Cusp:
    N: int
    y: int
    x: int

    @classmethod
    def make(cls, N: int, x: int, y: int) -> Cusp:
        y %= N
        d = math.gcd(y, N)
        if math.gcd(x, d) != 1:
            raise ValueError(f"({x}, {y}) is not a cusp of level {N}")

        def rep(x, y):
            # x lives mod d; represent it in 1..d
            return ((x - 1) % d) + 1, y % N

        a = rep(x, y)
        b = rep(-x, -y)
        x0, y0 = min(a, b, key=lambda t: (t[1], t[0]))
        return cls(N, y0, x0)

    @property
    def level(self) -> int:
        """d = gcd(y, N)."""
        return math.gcd(self.y, self.N)

    def act(self, a: int) -> Cusp:
        return Cusp.make(self.N, a * self.x, pow(a, -1, self.N) * self.y)

    def __str__(self):
        return f"+-({self.x},{self.y})"


def _check_level(N: int) -> None:
    if N < 5:
        raise UnsupportedLevel(f"cusp description needs N >= 5, got {N}")


def cusp_inventory(N: int) -> dict[int, int]:
    """Number of X_1(N) cusps at each level d | N: phi(d) phi(N/d) / 2."""
    _check_level(N)
    return {d: euler_phi(d) * euler_phi(N // d) // 2 for d in range(1, N + 1) if N % d == 0}


def x1_cusps(N: int) -> list[Cusp]:
    """Every cusp of X_1(N), by direct enumeration of pairs."""
    _check_level(N)
    found = set()
    for y in range(N):
        d = math.gcd(y, N)
        for x in range(1, d + 1):
            if math.gcd(x, d) == 1:
                found.add(Cusp.make(N, x, y))
    return sorted(found)


def cusps_over(N: int, cusp: Cusp) -> list[Cusp]:
    """The X_1(N) cusps in the same X_0(N) cusp (full unit-group orbit)."""
    return sorted({cusp.act(a) for a in units(N)})


def validate_delta(N: int, delta: Iterable[int]) -> frozenset[int]:
    delta = frozenset(a % N for a in delta)
    if any(math.gcd(a, N) != 1 for a in delta):
        raise InvalidDelta(f"Delta contains non-units mod {N}")
    if 1 not in delta or (N - 1) not in delta:
        raise InvalidDelta("Delta must contain +-1")
    if any(a * b % N not in delta for a in delta for b in delta):
        raise InvalidDelta("Delta is not closed under multiplication")
    return delta


@dataclass(frozen=True)
class CuspOrbit:
    members: tuple[Cusp, ...]
    tag: str = "delta"

    @property
    def representative(self) -> Cusp:
        return self.members[0]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def ys(self) -> frozenset[int]:
        return frozenset(c.y for c in self.members)

    def __str__(self):
        return "{" + ", ".join(str(c) for c in self.members) + "}"


def delta_orbits(N: int, delta: Iterable[int], cusps: Sequence[Cusp] | None = None, tag: str = "delta") -> list[CuspOrbit]:
    """Partition ``cusps`` (default: all of X_1(N)) into Delta-orbits."""
    delta = validate_delta(N, delta)
    pool = set(x1_cusps(N) if cusps is None else cusps)
    remaining = set(pool)
    orbits = []
    for c in sorted(pool):
        if c not in remaining:
            continue
        orbit = {c.act(a) for a in delta}
        if not orbit <= pool:
            raise ValueError("cusp subset is not stable under Delta")
        remaining -= orbit
        orbits.append(CuspOrbit(tuple(sorted(orbit)), tag))
    return orbits


@dataclass(frozen=True)
class ConjugacyClass:
    orbits: tuple[CuspOrbit, ...]

    @property
    def size(self) -> int:
        return len(self.orbits)

    @property
    def quadratic(self) -> bool:
        return self.size == 2

    @property
    def rational(self) -> bool:
        return self.size == 1


def conjugacy_classes(orbits: Sequence[CuspOrbit]) -> list[ConjugacyClass]:
    """Group orbits that share a y-value: cusps with the same y are conjugate."""
    parent = list(range(len(orbits)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(orbits)):
        for k in range(i + 1, len(orbits)):
            if orbits[i].ys & orbits[k].ys:
                parent[find(i)] = find(k)
    groups: dict[int, list[CuspOrbit]] = {}
    for i, orbit in enumerate(orbits):
        groups.setdefault(find(i), []).append(orbit)
    classes = [ConjugacyClass(tuple(g)) for g in groups.values()]
    return sorted(classes, key=lambda c: c.orbits[0].representative)


def al_on_cusp(N: int, N_prime: int) -> Cusp:
    """Image of the cusp +-(1,1) under w_{N'}: the cusp +-(1, N')."""
    if N_prime < 1 or N % N_prime or math.gcd(N_prime, N // N_prime) != 1:
        raise InvalidDivisor(f"{N_prime} is not an exact divisor of {N}")
    return Cusp.make(N, 1, N_prime)


def classes_over(N: int, delta: Iterable[int], cusp: Cusp) -> list[ConjugacyClass]:
    """Conjugacy classes of the X_Delta(N) cusps above the X_0(N) cusp of ``cusp``."""
    return conjugacy_classes(delta_orbits(N, delta, cusps_over(N, cusp)))


def is_quadratic_over(N: int, delta: Iterable[int], cusp: Cusp) -> bool:
    """True when every X_Delta(N) cusp above this X_0(N) cusp is quadratic."""
    classes = classes_over(N, delta, cusp)
    return bool(classes) and all(c.quadratic for c in classes)


def quadratic_cusp_images(model) -> set:
    """(translation point, involution name) for involutions sending infinity
    to an X_0(N) cusp whose X_Delta(N) cusps are quadratic.

    An involution P -> +-P + T sends the identity (the cusp at infinity) to T,
    and w_{N'} sends +-(1,1) to +-(1,N').
    """
    out = set()
    for w in model.involutions:
        if is_quadratic_over(model.level, model.delta, al_on_cusp(model.level, w.level)):
            out.add((w.translation, w.name))
    return out
