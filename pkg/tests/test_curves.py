import time
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sextic.curves import (
    O, O_MOD, ModPoint, MordellCurve, add, mod_add, mod_contains, mod_mul,
    multiply, order_if_torsion, point_order_mod_p, points_mod_p, pt,
    reduce_mod_p, scale_point, subgroup_mod_p, torsion_points,
)


def _set(*pts):
    return {O} | {pt(x, y) for x, y in pts}


TORSION_CASES = [
    (1, _set((2, 3), (2, -3), (0, 1), (0, -1), (-1, 0))),
    (-432, _set((12, 36), (12, -36))),
    (8, _set((-2, 0))),
    (27, _set((-3, 0))),
    (-375, {O}),
    (-2500, {O}),
] + [(B * B, _set((0, B), (0, -B))) for B in range(2, 8)]


@pytest.mark.parametrize("c,expected", TORSION_CASES)
def test_torsion_table(c, expected):
    assert set(torsion_points(MordellCurve(c))) == expected


def test_torsion_is_fast():
    t = time.perf_counter()
    for c, _ in TORSION_CASES:
        torsion_points(MordellCurve(c))
    assert time.perf_counter() - t < 1.0


def test_torsion_scaled_model():
    # y^2 = x^3 + 64 is c = 1 rescaled by s = 2
    assert set(torsion_points(MordellCurve(64))) == _set((-4, 0), (0, 8), (0, -8), (8, 24), (8, -24))


def test_torsion_order_divides_six():
    for c in range(-60, 61):
        if c == 0:
            continue
        E = MordellCurve(c)
        T = torsion_points(E)
        assert T[0] == O
        assert 6 % len(T) == 0
        for P in T:
            assert E.contains(P)
            assert order_if_torsion(E, P, 6) is not None


def test_zero_c_rejected():
    with pytest.raises(ValueError):
        MordellCurve(0)


def test_reduced_model():
    red, s = MordellCurve(-4 * 10 ** 6).reduced()
    assert (red.c, s) == (-4, 10)


# random points on y^2 = x^3 + c: pick (x, y) and set c = y^2 - x^3
small = st.integers(min_value=-30, max_value=30)


@st.composite
def curve_and_points(draw, n=3):
    x0, y0 = draw(small), draw(small)
    c = y0 * y0 - x0 ** 3
    if c == 0:
        c, y0 = 1, 1
        x0 = 0
    E = MordellCurve(c)
    P = pt(x0, y0)
    pts = [P] + [multiply(E, draw(st.integers(-3, 3)), P) for _ in range(n - 1)]
    return E, pts


@settings(max_examples=60, deadline=None)
@given(curve_and_points())
def test_group_law_associative(data):
    E, (P, Q, R) = data
    assert add(E, add(E, P, Q), R) == add(E, P, add(E, Q, R))
    assert add(E, P, Q) == add(E, Q, P)
    assert E.contains(add(E, P, Q))
    assert add(E, P, -P) == O
    assert add(E, P, O) == P


@settings(max_examples=60, deadline=None)
@given(curve_and_points(n=1), st.integers(-6, 6), st.integers(-6, 6))
def test_multiplication_is_homomorphic(data, m, n):
    E, (P,) = data
    assert multiply(E, m + n, P) == add(E, multiply(E, m, P), multiply(E, n, P))
    assert multiply(E, m * n, P) == multiply(E, m, multiply(E, n, P))


@settings(max_examples=60, deadline=None)
@given(curve_and_points(n=2), st.sampled_from([5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43]))
def test_reduction_is_homomorphic(data, p):
    E, (P, Q) = data
    if (6 * E.c) % p == 0:
        return
    S = add(E, P, Q)
    lhs = reduce_mod_p(E, S, p)
    rhs = mod_add(E.c, reduce_mod_p(E, P, p), reduce_mod_p(E, Q, p), p)
    assert lhs == rhs
    assert mod_contains(E.c, lhs, p)


def test_points_mod_p_brute_force_and_hasse():
    for c in (1, -2, 7, -432):
        E = MordellCurve(c)
        for p in (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43):
            if (6 * c) % p == 0:
                continue
            pts = points_mod_p(E, p)
            brute = 1 + sum(1 for x in range(p) for y in range(p) if (y * y - x ** 3 - c) % p == 0)
            assert len(pts) == brute
            assert abs(p + 1 - len(pts)) <= 2 * p ** 0.5
            for P in pts:
                assert len(pts) % point_order_mod_p(E, P, p) == 0


def test_subgroup_mod_p_cyclic():
    E = MordellCurve(-2500)
    g = reduce_mod_p(E, pt(50, 350), 43)
    sub = subgroup_mod_p(E.c, [g], 43)
    assert len(sub) == point_order_mod_p(E, g, 43)
    assert {mod_mul(E.c, n, g, 43) for n in range(len(sub))} == sub


def test_bad_reduction_rejected():
    E = MordellCurve(-2500)
    with pytest.raises(ValueError):
        reduce_mod_p(E, pt(50, 350), 5)
    with pytest.raises(ValueError):
        points_mod_p(E, 3)


def test_reduce_denominator_gives_infinity():
    E = MordellCurve(-375)
    P = pt(10, 25)
    n = point_order_mod_p(E, reduce_mod_p(E, P, 19), 19)
    Q = multiply(E, n, P)
    assert Q.x.denominator % 19 == 0
    assert reduce_mod_p(E, Q, 19) == O_MOD


def test_scale_point():
    P = pt(2, 3)
    Q = scale_point(P, 2)
    assert Q == pt(8, 24)
    assert MordellCurve(64).contains(Q)
    assert scale_point(Q, Fraction(1, 2)) == P
    assert scale_point(O, 5) == O


def test_modpoint_repr():
    assert repr(O_MOD) == "O"
    assert repr(ModPoint(7, 6)) == "(7, 6)"
    assert repr(O) == "O"
