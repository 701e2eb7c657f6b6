from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from sextic.arith import (
    DivisorPair, cube_free_part, divisor_pairs, factorize, frac_str, iroot,
    is_cube, is_prime, is_rational_square, is_square, legendre_symbol,
    num_divisors, parse_frac, positive_divisors, power_content, primes_up_to,
    rational_root, sixth_power_free,
)


def test_square_and_cube_basics():
    assert is_square(0) == 0
    assert is_square(144) == 12
    assert is_square(145) is None
    assert is_square(-4) is None
    assert is_cube(-27) == -3
    assert is_cube(26) is None


@given(st.integers(min_value=0, max_value=10 ** 40), st.integers(min_value=2, max_value=7))
def test_iroot_brackets(n, e):
    r = iroot(n, e)
    assert r ** e <= n < (r + 1) ** e


@given(st.integers(min_value=-10 ** 6, max_value=10 ** 6).filter(bool),
       st.integers(min_value=1, max_value=10 ** 6))
def test_rational_square_roundtrip(a, b):
    q = Fraction(a, b)
    assert is_rational_square(q * q) == abs(q)
    assert rational_root(q ** 3, 3) == q


def test_rational_root_negative_even():
    assert rational_root(Fraction(-4), 2) is None
    assert rational_root(Fraction(-8, 27), 3) == Fraction(-2, 3)


@given(st.integers(min_value=1, max_value=10 ** 9))
def test_factorize_matches_sympy(n):
    assert factorize(n) == sympy.factorint(n)
    assert factorize(-n) == sympy.factorint(n)


def test_factorize_zero():
    with pytest.raises(ValueError):
        factorize(0)


@given(st.integers(min_value=-5, max_value=10 ** 12))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_primes_up_to():
    assert primes_up_to(1) == []
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(10 ** 4) == list(sympy.primerange(2, 10 ** 4 + 1))


@given(st.integers(min_value=1, max_value=10 ** 12))
def test_power_content(n):
    s = power_content(n, 6)
    assert n % s ** 6 == 0
    # the cofactor has no sixth power left
    assert all(e < 6 for e in sympy.factorint(n // s ** 6).values())


def test_sixth_power_free():
    assert sixth_power_free(-25)
    assert sixth_power_free(63)
    assert not sixth_power_free(64)
    assert not sixth_power_free(-2 * 3 ** 6)
    with pytest.raises(ValueError):
        sixth_power_free(0)


def test_cube_free_part():
    # the exact constants of the elementary sieve
    assert cube_free_part(3780) == 140
    assert cube_free_part(4644) == 172
    assert cube_free_part(2268) == 84
    assert cube_free_part(3348) == 124
    assert cube_free_part(-54) == -2


@given(st.integers(min_value=1, max_value=10 ** 6))
def test_divisors(n):
    ds = positive_divisors(n)
    assert ds == sorted(sympy.divisors(n))
    assert num_divisors(n) == len(ds)


def test_divisor_pairs_signs():
    pairs = divisor_pairs(-35)
    assert [(p.d1, p.d2) for p in pairs] == [(-35, 1), (-7, 5), (-5, 7), (-1, 35)]
    assert all(p.product == -35 for p in pairs)
    assert DivisorPair(10, 15).delta == 5
    with pytest.raises(ValueError):
        DivisorPair(1, -1)
    with pytest.raises(ValueError):
        divisor_pairs(0)


@given(st.integers(min_value=-1000, max_value=1000),
       st.sampled_from([3, 5, 7, 11, 13, 43, 97, 1009]))
def test_legendre_matches_sympy(a, p):
    expect = 0 if a % p == 0 else sympy.legendre_symbol(a % p, p)
    assert legendre_symbol(a, p) == expect


def test_legendre_rejects_non_odd_prime():
    for p in (2, 9, 1):
        with pytest.raises(ValueError):
            legendre_symbol(1, p)


def test_frac_roundtrip():
    assert frac_str(Fraction(-3, 4)) == "-3/4"
    assert frac_str(5) == "5/1"
    assert parse_frac(" 249953/1000 ") == Fraction(249953, 1000)
