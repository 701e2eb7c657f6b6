from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sextic.curves import MordellCurve
from sextic.descent import (
    COVERS, DescentEquation, cover_models, covering_curve, eliminate_by_rank0,
    generate_S, local_certificate, locally_unsolvable, map_to_cover,
    member_for_point, pull_back,
)


def kinds(k):
    return Counter(eq.kind for eq in generate_S(k))


def test_counts_minus_35():
    assert kinds(-35) == {"I": 2, "II": 4}
    labels = [eq.label for eq in generate_S(-35)]
    assert labels == ["I(5,7)", "I(1,35)", "II(35,1)", "II(7,5)", "II(5,7)", "II(1,35)"]


def test_counts_minus_29():
    assert [eq.label for eq in generate_S(-29)] == ["I(1,29)", "II(29,1)", "II(1,29)"]


def test_minus_25_keeps_three_type_ii():
    # Neither pair sharing the prime 5 is impossible mod 25, so nothing drops.
    drops = []
    assert kinds(-25) == {"I": 2, "II": 3}
    generate_S(-25, drops)
    assert drops == []
    for eq in generate_S(-25):
        if eq.delta == 5:
            assert not locally_unsolvable(eq, 25)


def test_kind_by_residue():
    assert set(kinds(-48)) == {"III"}
    assert set(kinds(46)) == {"IV"}
    assert set(kinds(-13)) == {"I", "II"}
    with pytest.raises(ValueError):
        generate_S(0)
    with pytest.raises(ValueError):
        generate_S(128)


def test_equation_validation():
    with pytest.raises(ValueError):
        DescentEquation("II", -35, 5, 5)
    with pytest.raises(ValueError):
        DescentEquation("V", -35, 35, 1)
    eq = DescentEquation("II", -35, 35, 1)
    assert (eq.a1, eq.a2, eq.C) == (560, 1, 1)
    assert str(eq) == "II(35,1): x^3 = 560*y1^6 + 1*y2^6"


def test_local_sieve_minus_35():
    survivors, used = [], set()
    for eq in generate_S(-35):
        cert = local_certificate(eq, moduli=(7, 8))
        if cert is None:
            survivors.append(eq)
        else:
            used.add(cert.witness["modulus"])
    assert [eq.label for eq in survivors] == ["II(35,1)"]
    assert survivors[0].a1 == 16 * 35 and survivors[0].a2 == 1
    assert used <= {7, 8}


def test_five_five_is_impossible_mod_9():
    assert locally_unsolvable(DescentEquation("I", -25, 5, 5), 9)


def _brute_solutions(eq, bound=12):
    out = []
    for y1 in range(1, bound):
        for y2 in range(1, bound):
            rhs = eq.a1 * y1 ** 6 + eq.a2 * y2 ** 6
            if rhs % eq.C:
                continue
            t = rhs // eq.C
            r = round(abs(t) ** (1 / 3))
            for x in (r - 1, r, r + 1):
                x = x if t >= 0 else -x
                if eq.is_solution(x, y1, y2):
                    out.append((x, y1, y2))
    return out


@pytest.mark.parametrize("k", [-49, -48, -45, -35, -25, -13, 11, 28, 36, 39, 46, 47])
def test_local_unsolvability_is_sound(k):
    for eq in generate_S(k):
        if local_certificate(eq) is not None:
            assert _brute_solutions(eq) == []


@pytest.mark.parametrize("k,X,Y,label,sol", [
    (-48, 2, 4, "III(2,6)", (2, 1, 1)),
    (36, 0, 6, "III(-3,3)", (0, 1, 1)),
    (36, 2, 10, "III(-1,9)", (2, 1, 1)),
    (-15, 2, 7, "I(1,15)", (2, 1, 1)),
    (43, Fraction(7, 3), Fraction(386, 27), "I(-1,43)", (-7, 3, 1)),
    (-47, Fraction(63, 10), Fraction(249953, 1000), "II(1,47)", (63, 5, 1)),
])
def test_member_for_point(k, X, Y, label, sol):
    found = member_for_point(k, X, Y)
    assert (label, sol) in [(eq.label, s) for eq, s in found]
    for eq, s in found:
        assert eq.is_solution(*s)
        PX, PY = eq.to_curve_point(*s)
        assert PY * PY == PX ** 6 + k
        assert abs(PX) == abs(Fraction(X))


@pytest.mark.parametrize("k", [-48, 36, -15, 43, -47])
def test_cover_maps_land_on_curves(k):
    pts = {-48: (2, 4), 36: (2, 10), -15: (2, 7), 43: (Fraction(7, 3), Fraction(386, 27)),
           -47: (Fraction(63, 10), Fraction(249953, 1000))}
    for eq, sol in member_for_point(k, *pts[k]):
        for which in COVERS:
            raw = covering_curve(eq, which)
            P = map_to_cover(eq, sol, which)
            assert raw.contains(P)
            assert sol in pull_back(eq, P, which)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["I", "II", "III", "IV"]), st.integers(1, 9), st.integers(1, 9),
       st.integers(-7, 7).filter(bool), st.integers(1, 7))
def test_cover_equations_as_identities(kind, y1, y2, d1, d2):
    # With y3^3 standing for A y1^6 + B y2^6, the E1 and E2 images satisfy
    # Y^2 - X^3 = c identically, whether or not y3 is rational.
    if kind in ("I", "II") and (d1 * d2) % 2 == 0:
        return
    if kind == "IV" and (d1 * d2) % 2 == 0:
        return
    k = {"I": -d1 * d2, "II": -d1 * d2, "III": -4 * d1 * d2, "IV": -2 * d1 * d2}[kind]
    eq = DescentEquation(kind, k, d1, d2)
    A, B = eq.A, eq.B
    cube = A * y1 ** 6 + B * y2 ** 6
    x1_cubed, y1_sq = Fraction(A ** 3 * cube, y2 ** 6), Fraction(A ** 4 * y1 ** 6, y2 ** 6)
    x2_cubed, y2_sq = Fraction(B ** 3 * cube, y1 ** 6), Fraction(B ** 4 * y2 ** 6, y1 ** 6)
    assert y1_sq - x1_cubed == covering_curve(eq, "E1").c
    assert y2_sq - x2_cubed == covering_curve(eq, "E2").c


def test_rank0_elimination_recovers_obvious_solution(facts):
    eq = DescentEquation("III", 36, -1, 9)
    cert = eliminate_by_rank0(eq, facts)
    assert cert is not None
    assert cert.solutions == [(2, 1, 1)]


def test_rank0_certificates_list_only_true_solutions(facts):
    for k in (-49, -48, -45, -13, 11, 28, 36, 39, 46, 47):
        for eq in generate_S(k):
            cert = eliminate_by_rank0(eq, facts)
            if cert is None:
                continue
            assert cert.method.startswith("RankZero")
            red = cover_models(eq, cert.method[-2:])[1]
            assert facts.get(red.c).rank == 0
            for s in cert.solutions:
                assert eq.is_solution(*s)


def test_rank0_ignores_unverified(facts):
    from sextic.facts import CurveFact, FactsDB
    db = FactsDB()
    for f in facts.facts.values():
        db.add(CurveFact(f.c, f.rank, f.generators, f.source, verified=False))
    for eq in generate_S(-49):
        assert eliminate_by_rank0(eq, db) is None


def test_digest_is_stable():
    eq = DescentEquation("II", -35, 7, 5)
    cert = local_certificate(eq)
    assert cert.digest() == "LocalModM[II(7,5)]{modulus=7,residues=343}"


def test_covering_curve_values():
    eq = DescentEquation("I", -25, 5, 5)
    assert covering_curve(eq, "E1") == MordellCurve(-160000)
    assert cover_models(eq, "E1")[1:] == (MordellCurve(-2500), 2)
    eq = DescentEquation("II", -29, 1, 29)
    assert cover_models(eq, "E2")[1:] == (MordellCurve(-16 * 29 ** 3), 1)
    with pytest.raises(ValueError):
        covering_curve(eq, "E4")
