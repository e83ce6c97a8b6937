import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import cusp_classes
from torsion_obstruction.cusps import (
    Cusp, al_on_cusp, classes_over, conjugacy_classes, cusp_inventory, cusps_over, delta_orbits,
    euler_phi, is_quadratic_over, quadratic_cusp_images, units, validate_delta, x1_cusps,
)
from torsion_obstruction.errors import InvalidDelta, InvalidDivisor, UnsupportedLevel

D24 = (1, 11, 13, 23)
D32 = (1, 7, 9, 15, 17, 23, 25, 31)


def pairs(orbit):
    return {(c.x, c.y) for c in orbit.members}


@pytest.mark.parametrize("N", range(5, 41))
def test_enumeration_matches_definition_and_inventory(N):
    cusps = x1_cusps(N)
    assert len(cusps) == len(cusp_classes(N)) == sum(cusp_inventory(N).values())
    for d, count in cusp_inventory(N).items():
        assert sum(1 for c in cusps if c.level == d) == count == euler_phi(d) * euler_phi(N // d) // 2


def test_inventories():
    assert cusp_inventory(24) == {1: 4, 2: 2, 3: 4, 4: 2, 6: 2, 8: 4, 12: 2, 24: 4}
    assert cusp_inventory(32) == {1: 8, 2: 4, 4: 4, 8: 4, 16: 4, 32: 8}
    with pytest.raises(UnsupportedLevel):
        cusp_inventory(4)


def test_canonical_representatives():
    assert Cusp.make(24, -2, -9) == Cusp.make(24, 2, 9)
    assert str(Cusp.make(24, 22, 15)) == "+-(2,9)"
    assert str(Cusp.make(24, 23, 0)) == "+-(1,0)"
    assert str(Cusp.make(32, 17, 0)) == "+-(15,0)"
    with pytest.raises(ValueError):
        Cusp.make(24, 2, 0)


@given(st.integers(5, 48).flatmap(lambda N: st.tuples(st.just(N), st.integers(0, N - 1), st.integers(0, N - 1))))
def test_diamond_action(case):
    N, x, y = case
    d = math.gcd(y, N)
    if math.gcd(x, d) != 1:
        return
    c = Cusp.make(N, x, y)
    assert c.act(1) == c and c.act(N - 1) == c
    for a in units(N)[:4]:
        for b in units(N)[:4]:
            assert c.act(a).act(b) == c.act(a * b % N)


def test_level_32_splitting_over_zero():
    orbits = delta_orbits(32, D32, cusps_over(32, Cusp.make(32, 1, 0)))
    assert [pairs(o) for o in orbits] == [
        {(1, 0), (7, 0), (9, 0), (15, 0)},
        {(3, 0), (5, 0), (11, 0), (13, 0)},
    ]
    assert [k.size for k in conjugacy_classes(orbits)] == [2]


@pytest.mark.parametrize(
    "cusp,expected",
    [
        ((1, 0), [{(1, 0), (11, 0)}, {(5, 0), (7, 0)}]),
        ((1, 3), [{(1, 3), (2, 9)}, {(2, 3), (1, 9)}]),
        ((1, 8), [{(1, 8), (5, 8)}, {(3, 8), (7, 8)}]),
    ],
)
def test_level_24_splittings(cusp, expected):
    c = Cusp.make(24, *cusp)
    assert len(cusps_over(24, c)) == 4
    orbits = delta_orbits(24, D24, cusps_over(24, c))
    assert [pairs(o) for o in orbits] == expected
    assert is_quadratic_over(24, D24, c)


def test_cusp_at_infinity_is_rational():
    for N, D in ((24, D24), (32, D32)):
        classes = classes_over(N, D, Cusp.make(N, 1, 1))
        assert all(k.rational for k in classes)


def test_atkin_lehner_images():
    for N, Np in ((24, 3), (24, 8), (24, 24), (32, 32)):
        assert al_on_cusp(N, Np) == Cusp.make(N, 1, Np)
    assert al_on_cusp(24, 1) == Cusp.make(24, 1, 1)
    for N, Np in ((24, 2), (24, 6), (32, 4), (24, 5)):
        with pytest.raises(InvalidDivisor):
            al_on_cusp(N, Np)


def test_quadratic_cusp_images_match_curated_lists(m32, m24):
    for m in (m32, m24):
        assert quadratic_cusp_images(m) == set(m.quadratic_cusp_images)


def test_delta_validation():
    assert validate_delta(24, D24) == frozenset(D24)
    with pytest.raises(InvalidDelta):
        validate_delta(24, (1, 23, 5))  # not closed
    with pytest.raises(InvalidDelta):
        validate_delta(24, (1, 11, 13))  # no -1
    with pytest.raises(InvalidDelta):
        validate_delta(24, (1, 2, 23))  # non-unit
    # Burnside over Delta / +-1 = {1, 11}: (24 + fixed points of 11) / 2
    fixed = sum(1 for c in x1_cusps(24) if c.act(11) == c)
    assert len(delta_orbits(24, D24)) == (24 + fixed) // 2 == 16
