"""Curated genus-one models of X_0(N): equations, j-maps, Atkin-Lehner maps.

Model data is declarative (``data/models.json`` ships the two built-in models);
this module loads it, reduces models modulo good primes, evaluates the j-map,
applies involutions in whatever base a point lives in, and computes the
rational torsion subgroup with Lutz-Nagell.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from pathlib import Path

from . import expr
from .ec_group import INFINITY, QQ, GroupStructure, Point, WeierstrassCurve
from .errors import BadPrime, CuspidalOrBadPoint, ModelConfigError, NotOnCurve
from .finite_field import FieldElement, FieldSpec

CONFIG_VERSION = 1


def _rational(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, int):
        return Fraction(value)
    raise ModelConfigError(f"rationals are written as integers or 'p/q' strings, got {value!r}")


@dataclass(frozen=True)
class Involution:
    """The map P -> sign*P + T on the model."""

    name: str
    level: int
    sign: int
    translation: Point

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ModelConfigError(f"involution {self.name}: sign must be +1 or -1")


@dataclass(frozen=True)
class ReductionSpec:
    p: int
    n: int
    modulus: tuple[int, ...] | None
    alpha: int
    target_order: int

    @cached_property
    def field(self) -> FieldSpec:
        return FieldSpec(self.p, self.n, self.modulus)


@dataclass(frozen=True, eq=False)
class ModularCurveModel:
    id: str
    level: int
    coefficients: tuple[int, ...]
    delta: tuple[int, ...]
    j_formula_text: str
    involutions: tuple[Involution, ...]
    branches: dict[str, tuple[str, ...]]
    quadratic_cusp_images: tuple[tuple[Point, str], ...]
    reduction: ReductionSpec | None = None
    j_formula: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "j_formula", expr.parse(self.j_formula_text))
        names = {w.name for w in self.involutions}
        for branch, members in self.branches.items():
            unknown = set(members) - names
            if unknown:
                raise ModelConfigError(f"branch {branch} names unknown involutions {sorted(unknown)}")
        for w in self.involutions:
            if not self.equation.contains(w.translation):
                raise ModelConfigError(f"translation of {w.name} is not on the curve")
        for P, name in self.quadratic_cusp_images:
            if name not in names or not self.equation.contains(P):
                raise ModelConfigError(f"bad quadratic cusp image {P} for {name}")

    @cached_property
    def equation(self) -> WeierstrassCurve:
        return WeierstrassCurve(QQ, *self.coefficients)

    def involution(self, name: str) -> Involution:
        for w in self.involutions:
            if w.name == name:
                return w
        raise KeyError(f"model {self.id} has no involution {name!r}")

    def branch(self, name: str | None = None) -> tuple[str, ...]:
        if name is None:
            if len(self.branches) != 1:
                raise ModelConfigError(f"model {self.id} needs an explicit branch: {sorted(self.branches)}")
            return next(iter(self.branches.values()))
        try:
            return self.branches[name]
        except KeyError:
            raise ModelConfigError(f"model {self.id} has no branch {name!r}") from None

    def reduced(self, spec: FieldSpec | None = None) -> WeierstrassCurve:
        """The model over ``spec`` (default: the configured reduction field)."""
        if spec is None:
            if self.reduction is None:
                raise ModelConfigError(f"model {self.id} has no reduction data")
            spec = self.reduction.field
        return reduce_model(self, spec.p, spec.n, spec.modulus)

    def to_dict(self) -> dict:
        def pt(P):
            return [str(P.x), str(P.y)]

        d = {
            "id": self.id,
            "level": self.level,
            "coefficients": list(self.coefficients),
            "delta": list(self.delta),
            "j_formula": self.j_formula_text,
            "involutions": [
                {"name": w.name, "level": w.level, "sign": w.sign, "translation": pt(w.translation)}
                for w in self.involutions
            ],
            "branches": {k: list(v) for k, v in self.branches.items()},
            "quadratic_cusp_images": [{"point": pt(P), "involution": n} for P, n in self.quadratic_cusp_images],
        }
        if self.reduction:
            r = self.reduction
            d["reduction"] = {
                "p": r.p, "n": r.n, "modulus": list(r.modulus) if r.modulus else None,
                "alpha": r.alpha, "target_order": r.target_order,
            }
        return d


def model_from_dict(d: dict) -> ModularCurveModel:
    try:
        def pt(pair):
            x, y = pair
            return Point(_rational(x), _rational(y))

        reduction = None
        if d.get("reduction"):
            r = d["reduction"]
            modulus = tuple(r["modulus"]) if r.get("modulus") else None
            reduction = ReductionSpec(r["p"], r.get("n", 1), modulus, r.get("alpha", 2), r["target_order"])
        return ModularCurveModel(
            id=d["id"],
            level=int(d["level"]),
            coefficients=tuple(int(c) for c in d["coefficients"]),
            delta=tuple(sorted(int(a) % int(d["level"]) for a in d["delta"])),
            j_formula_text=d["j_formula"],
            involutions=tuple(
                Involution(w["name"], int(w["level"]), int(w["sign"]), pt(w["translation"]))
                for w in d["involutions"]
            ),
            branches={k: tuple(v) for k, v in d["branches"].items()},
            quadratic_cusp_images=tuple((pt(q["point"]), q["involution"]) for q in d["quadratic_cusp_images"]),
            reduction=reduction,
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ModelConfigError):
            raise
        raise ModelConfigError(f"malformed model entry: {exc!r}") from exc


def load_models(path: str | Path | None = None) -> dict[str, ModularCurveModel]:
    """Read a model config file; the packaged built-ins when ``path`` is None."""
    if path is None:
        text = resources.files("torsion_obstruction").joinpath("data/models.json").read_text()
    else:
        text = Path(path).read_text()
    raw = json.loads(text)
    if raw.get("format_version") != CONFIG_VERSION:
        raise ModelConfigError(f"unsupported model config version {raw.get('format_version')!r}")
    models = [model_from_dict(m) for m in raw["models"]]
    return {m.id: m for m in models}


_BUILTINS: dict[str, ModularCurveModel] | None = None


def builtin_models() -> dict[str, ModularCurveModel]:
    global _BUILTINS
    if _BUILTINS is None:
        _BUILTINS = load_models()
    return _BUILTINS


def get_model(name_or_path: str) -> ModularCurveModel:
    builtins = builtin_models()
    if name_or_path in builtins:
        return builtins[name_or_path]
    path = Path(name_or_path)
    if path.exists():
        models = load_models(path)
        if len(models) != 1:
            raise ModelConfigError(f"{path} defines {len(models)} models; expected exactly one")
        return next(iter(models.values()))
    raise ModelConfigError(f"unknown model {name_or_path!r}")


# -- reduction -----------------------------------------------------------------


def reduce_model(model: ModularCurveModel, p: int, n: int = 1, modulus=None) -> WeierstrassCurve:
    if model.level % p == 0:
        raise BadPrime(f"p = {p} divides the level {model.level}")
    if model.equation.discriminant.numerator % p == 0:
        raise BadPrime(f"{model.id} has bad reduction at {p}")
    spec = FieldSpec(p, n, modulus)
    return WeierstrassCurve(spec, *model.coefficients)


def reduce_point(P: Point, base) -> Point:
    if P.is_infinity:
        return INFINITY
    return Point(base(P.x), base(P.y))


# -- j-map and involutions -----------------------------------------------------


def j_of_point(model: ModularCurveModel, P: Point):
    """j-invariant classified by P; CuspidalOrBadPoint if the formula degenerates."""
    if P.is_infinity:
        raise CuspidalOrBadPoint("the point at infinity is a cusp")
    return expr.evaluate(model.j_formula, P.x)


def _base_of(P: Point):
    if isinstance(P.x, FieldElement):
        return P.x.spec
    return QQ


def apply_involution(model: ModularCurveModel, name: str, P: Point, curve: WeierstrassCurve | None = None) -> Point:
    """sign*P + T, with T carried into the base of ``curve`` first."""
    w = model.involution(name)
    if curve is None:
        base = _base_of(P) if not P.is_infinity else QQ
        curve = model.equation if base == QQ else reduce_model(model, base.p, base.n, base.modulus)
    if not curve.contains(P):
        raise NotOnCurve(f"{P} is not on {curve}")
    T = reduce_point(w.translation, curve.base)
    image = P if w.sign == 1 else curve.neg(P)
    return curve.add(image, T)


def composition_level(n1: int, n2: int) -> int:
    """Level of w_{n1} o w_{n2}: lcm(n1, n2) / gcd(n1, n2)."""
    return math.lcm(n1, n2) // math.gcd(n1, n2)


def composition_violations(model: ModularCurveModel, branch: str | None, curve: WeierstrassCurve, points) -> list:
    """Points where the product rule for the branch's involutions fails.

    For each ordered pair of involutions (including a map with itself), the
    composite must be the identity (level 1) or the branch member of the
    composite level.
    """
    members = [model.involution(n) for n in model.branch(branch)]
    by_level = {w.level: w for w in members}
    bad = []
    for w1 in members:
        for w2 in members:
            level = composition_level(w1.level, w2.level)
            target = None if level == 1 else by_level.get(level)
            if level != 1 and target is None:
                bad.append((w1.name, w2.name, "no involution of level %d" % level))
                continue
            for P in points:
                lhs = apply_involution(model, w1.name, apply_involution(model, w2.name, P, curve), curve)
                rhs = P if target is None else apply_involution(model, target.name, P, curve)
                if lhs != rhs:
                    bad.append((w1.name, w2.name, P))
    return bad


# -- rational torsion (Lutz-Nagell) --------------------------------------------


@dataclass(frozen=True)
class RationalTorsionTable:
    points: tuple[Point, ...]
    orders: dict
    structure: GroupStructure


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _integer_roots(coeffs: list[int]) -> list[int]:
    """Integer roots of a monic polynomial given high-to-low coefficients."""
    roots = set()
    while len(coeffs) > 1 and coeffs[-1] == 0:
        roots.add(0)
        coeffs = coeffs[:-1]
    if len(coeffs) > 1:
        deg = len(coeffs) - 1
        for d in _divisors(coeffs[-1]):
            for r in (d, -d):
                if sum(c * r ** (deg - i) for i, c in enumerate(coeffs)) == 0:
                    roots.add(r)
    return sorted(roots)


def cubic_discriminant(a: int, b: int, c: int) -> int:
    """Discriminant of x^3 + a x^2 + b x + c."""
    return a * a * b * b - 4 * b**3 - 4 * a**3 * c - 27 * c * c + 18 * a * b * c


def _is_integral(P: Point) -> bool:
    return P.is_infinity or (P.x.denominator == 1 and P.y.denominator == 1)


def rational_torsion(curve: WeierstrassCurve, max_multiple: int = 16) -> RationalTorsionTable:
    """Torsion subgroup of y^2 = x^3 + a2 x^2 + a4 x + a6 with integer coefficients.

    Candidates are integral points with y = 0 or y^2 dividing the cubic's
    discriminant; a candidate is kept when some multiple up to ``max_multiple``
    is the identity while every earlier multiple stays integral.
    """
    if curve.base != QQ:
        raise TypeError("rational_torsion needs a curve over QQ")
    a1, a2, a3, a4, a6 = curve.coefficients
    if a1 or a3 or any(c.denominator != 1 for c in (a2, a4, a6)):
        raise ValueError("Lutz-Nagell here needs a1 = a3 = 0 and integral coefficients")
    a, b, c = int(a2), int(a4), int(a6)
    disc = cubic_discriminant(a, b, c)
    candidates = {Point(Fraction(x), Fraction(0)) for x in _integer_roots([1, a, b, c])}
    for d in _divisors(disc):
        y = math.isqrt(d)
        if y * y != d:
            continue
        for x in _integer_roots([1, a, b, c - y * y]):
            candidates.add(Point(Fraction(x), Fraction(y)))
            candidates.add(Point(Fraction(x), Fraction(-y)))
    orders = {INFINITY: 1}
    for P in candidates:
        Q = P
        for k in range(1, max_multiple + 1):
            if Q.is_infinity:
                orders[P] = k
                break
            if not _is_integral(Q):
                break
            Q = curve.add(Q, P)
    points = tuple(sorted(orders, key=_torsion_sort_key))
    n1 = max(orders.values())
    structure = GroupStructure(len(points) // n1, n1)
    return RationalTorsionTable(points, orders, structure)


def _torsion_sort_key(P: Point):
    if P.is_infinity:
        return (0, 0, 0)
    return (1, P.x, P.y)


def reduction_is_injective(model: ModularCurveModel, p: int) -> bool:
    """Rational torsion reduces mod p injectively and with orders preserved."""
    curve = reduce_model(model, p)
    table = rational_torsion(model.equation)
    images = [reduce_point(P, curve.base) for P in table.points]
    if len(set(images)) != len(images):
        return False
    return all(curve.point_order(Q) == table.orders[P] for P, Q in zip(table.points, images))
