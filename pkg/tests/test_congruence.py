from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sextic.congruence import (
    CongruenceCertificate, ResidueShape, certify_80_3, certify_by_parity,
    certify_impossible, certifying_primes, multiples_residue_set,
    parity_profile, residue_group, shape_solvable,
)
from sextic.curves import O_MOD, ModPoint, MordellCurve, multiply, pt, reduce_mod_p
from sextic.descent import DescentEquation, cover_models, generate_S


def test_residues_of_50_350_mod_43():
    E = MordellCurve(-2500)
    got = multiples_residue_set(E, pt(50, 350), 43)
    want = {O_MOD} | {ModPoint(x, y) for x in (7, 42, 37) for y in (6, 37)}
    assert got == want


def test_residue_set_by_brute_multiples():
    # oracle: reduce n*P computed over Q, for n up to the order
    E = MordellCurve(-2500)
    P = pt(50, 350)
    brute = {reduce_mod_p(E, multiply(E, n, P), 43) for n in range(0, 8)}
    assert brute == multiples_residue_set(E, P, 43)


def test_shape_50t3():
    shape = ResidueShape(Fraction(50), 3)
    assert not shape_solvable(shape, 6, 43)
    assert not shape_solvable(shape, -6, 43)
    assert shape_solvable(shape, 0, 43)
    assert shape_solvable(ResidueShape(Fraction(1), 3), 8, 43)
    with pytest.raises(ValueError):
        ResidueShape(Fraction(1), 2)


@settings(max_examples=50)
@given(st.integers(-50, 50).filter(bool), st.integers(1, 30), st.sampled_from([7, 13, 19, 31, 43]))
def test_shape_values_are_images(a, t, p):
    shape = ResidueShape(Fraction(a), 3)
    assert a * t ** 3 % p in shape.values(p)
    assert len(shape.values(p)) <= p


def test_certify_minus_25_at_43(facts):
    found = []
    for eq in generate_S(-25):
        for side in ("E1", "E2"):
            fact = facts.get(cover_models(eq, side)[1].c)
            cert = certify_impossible(eq, fact, 43)
            if cert is not None:
                found.append(cert)
    assert found
    cert = found[0]
    assert isinstance(cert, CongruenceCertificate)
    assert cert.p == 43 and cert.trace
    assert cert.digest().startswith("Congruence[")
    assert cert.digest() == found[0].digest()


def test_certify_minus_29_at_19(facts):
    eq = next(e for e in generate_S(-29) if e.label == "II(1,29)")
    fact = facts.get(cover_models(eq, "E2")[1].c)
    cert = certify_impossible(eq, fact, 19)
    assert cert is not None
    assert cert.side == "E2"
    assert cert.shape.a == 841
    assert 19 in certifying_primes(eq, fact, bound=30)


def test_inconclusive_cases_return_none(facts):
    eq = next(e for e in generate_S(-29) if e.label == "II(1,29)")
    fact = facts.get(cover_models(eq, "E2")[1].c)
    assert certify_impossible(eq, fact, 29) is None  # bad prime
    assert certify_impossible(eq, None, 19) is None
    assert certify_impossible(eq, facts.get(-2500), 19) is None  # unrelated curve


@pytest.mark.parametrize("k", [-15, 7, 9, 17, -26, 1025])
def test_no_certificate_for_solvable_equations(k, facts):
    # equations with a genuine small solution must never be certified
    from sextic.descent import member_for_point
    from sextic.search import search_k
    pts = search_k(k, 30)
    members = set()
    for P in pts:
        for eq, _ in member_for_point(k, P.X, P.Y):
            members.add(eq)
    for eq in members:
        for side in ("E1", "E2"):
            fact = facts.get(cover_models(eq, side)[1].c)
            for p in (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43):
                assert certify_impossible(eq, fact, p) is None


def test_residue_group_contains_every_generator_multiple(facts):
    fact = facts.get(-2500)
    E = MordellCurve(-2500)
    grp = residue_group(E, fact.generators, 43)
    for G in fact.generators:
        for n in range(-5, 6):
            assert reduce_mod_p(E, multiply(E, n, G), 43) in grp


def test_parity_profile_375():
    E = MordellCurve(-375)
    rep = parity_profile(E, pt(10, 25), 60)
    assert rep.clean
    for r in (1, 2, 4, 5):
        assert rep.by_class[r] == [(1, 1)]
    with pytest.raises(ValueError):
        parity_profile(E, pt(10, 25), 5)


def test_three_p_multiples_mod_19():
    E = MordellCurve(-375)
    got = multiples_residue_set(E, pt(10, 25), 19, step=3)
    assert got == {O_MOD, ModPoint(0, 9), ModPoint(0, 10)}


def test_certify_80_3(facts):
    cert = certify_80_3(facts)
    assert cert.method == "ParityCongruence"
    assert cert.p == 19
    assert cert.eq.a1 == 80 and cert.eq.a2 == 3


def test_parity_rejects_wrong_rank(facts):
    eq = DescentEquation("II", -15, 5, 3)
    assert certify_by_parity(eq, facts.get(-2500), 19) is None
