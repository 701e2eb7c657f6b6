"""Exact integer and rational helpers.

Python ints and ``fractions.Fraction`` already give unbounded exact
arithmetic, so this module only adds the number-theoretic predicates the
rest of the package needs.  Nothing in here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt


def is_square(n: int) -> int | None:
    """Return r >= 0 with r*r == n, or None."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def iroot(n: int, e: int) -> int:
    """Floor of the e-th root of n >= 0, by integer Newton iteration."""
    if n < 0:
        raise ValueError("iroot needs n >= 0")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + e - 1) // e)
    while True:
        y = ((e - 1) * x + n // x ** (e - 1)) // e
        if y >= x:
            break
        x = y
    while x ** e > n:
        x -= 1
    while (x + 1) ** e <= n:
        x += 1
    return x


def is_cube(n: int) -> int | None:
    """Return r (same sign as n) with r**3 == n, or None."""
    r = iroot(abs(n), 3)
    if r ** 3 != abs(n):
        return None
    return r if n >= 0 else -r


def rational_root(q: Fraction, e: int) -> Fraction | None:
    """Exact rational e-th root (real, sign-preserving for odd e)."""
    q = Fraction(q)
    if q < 0:
        if e % 2 == 0:
            return None
        r = rational_root(-q, e)
        return None if r is None else -r
    a = iroot(q.numerator, e)
    b = iroot(q.denominator, e)
    if a ** e != q.numerator or b ** e != q.denominator:
        return None
    return Fraction(a, b)


def is_rational_square(q: Fraction) -> Fraction | None:
    return rational_root(q, 2)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division (inputs here are small)."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    step = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond anything used here."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


def power_content(n: int, e: int) -> int:
    """Largest s > 0 with s**e | n.

    Only primes p with p**e <= |n| can contribute, so trial division stops
    at the e-th root of |n|; this stays cheap even for 12-digit inputs.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("content of 0 is undefined")
    s = 1
    bound = iroot(n, e)
    p = 2
    while p <= bound:
        if n % p == 0:
            v = 0
            while n % p == 0:
                n //= p
                v += 1
            s *= p ** (v // e)
            bound = iroot(n, e)
        p += 1 if p == 2 else 2
    return s


def sixth_power_free(k: int) -> bool:
    if k == 0:
        raise ValueError("k must be nonzero")
    return power_content(k, 6) == 1


def cube_free_part(n: int) -> int:
    """n divided by its largest cube factor (sign kept)."""
    s = power_content(n, 3)
    return n // s ** 3


def num_divisors(n: int) -> int:
    out = 1
    for v in factorize(n).values():
        out *= v + 1
    return out


def positive_divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("0 has no finite divisor list")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class DivisorPair:
    d1: int
    d2: int
    delta: int = field(init=False)

    def __post_init__(self):
        if self.d2 <= 0:
            raise ValueError("d2 must be positive")
        object.__setattr__(self, "delta", gcd(self.d1, self.d2))

    @property
    def product(self) -> int:
        return self.d1 * self.d2


def divisor_pairs(N: int, require_d2_positive: bool = True) -> list[DivisorPair]:
    """All (d1, d2) with d1*d2 == N and d2 > 0, ascending in d2.

    d1 carries the sign of N.  The flag exists for call-site clarity; a
    negative d2 is never produced.
    """
    if N == 0:
        raise ValueError("N must be nonzero")
    if not require_d2_positive:
        raise ValueError("only d2 > 0 is supported")
    return [DivisorPair(N // d2, d2) for d2 in positive_divisors(N)]


def legendre_symbol(a: int, p: int) -> int:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def frac_str(q: Fraction | int) -> str:
    """Render as n/d, always with an explicit denominator."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s.strip())
