"""Elementary sieve for D*Y1^6 + Y2^6 = X^3 with Y1 != 0, (D*Y1, Y2) = 1.

Two cases, split on whether 3 divides X - Y2^2.  In the first, X - Y2^2
and X^2 + X*Y2^2 + Y2^4 are coprime and a quartic forces the congruence
conditions in ``case_i_pairs``.  In the second, factoring over Z[w]
(w^2 + w + 1 = 0) gives the binary sextic forms F1, F2; when d2 = 1 the
form F1 splits into six pairwise coprime linear factors in (a, b) and the
ratio u = a/b lands on the pair of genus-one curves

    u(u - 1) = 2*c1*w^3,        (u + 1)(2u - 1)(u - 2) = 2*c2*w^3,

both birational to Mordell curves y^2 = x^3 + 64*c^2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, isqrt

from .arith import (
    DivisorPair, cube_free_part, divisor_pairs, factorize, legendre_symbol,
    prime_divisors, primes_up_to,
)
from .curves import MordellCurve, Point, torsion_points

CASE_I_RESIDUES = frozenset({(1, 1), (1, 7), (1, 8), (4, 2), (4, 4), (4, 7), (7, 1), (7, 4), (7, 5)})


class IncompleteElimination(Exception):
    def __init__(self, pairs):
        super().__init__(f"no elimination route for pairs {pairs}")
        self.pairs = pairs


@dataclass(frozen=True)
class SieveProblem:
    D: int

    def __post_init__(self):
        if self.D == 0:
            raise ValueError("D must be nonzero")

    @property
    def tau(self) -> int:
        t, d = 0, abs(self.D)
        while d % 3 == 0:
            d //= 3
            t += 1
        return t

    @property
    def nu(self) -> int:
        t = self.tau
        return {0: 5, 1: 6}.get(t, t - 1)


def _structural(p: DivisorPair) -> bool:
    # (2*d1*Y3, d2*Y4) = 1 forces d2 odd and gcd(d1, d2) = 1.
    return p.d2 % 2 == 1 and gcd(p.d1, p.d2) == 1


def case_i_pairs(D: int) -> list[DivisorPair]:
    """(d1, d2) surviving the three necessary conditions of the first case.

    The first case needs D*Y1 prime to 3, so it is empty when 3 | D.
    """
    if D == 0:
        raise ValueError("D must be nonzero")
    if D % 3 == 0:
        return []
    out = []
    for p in divisor_pairs(D):
        if not _structural(p):
            continue
        if (p.d2 % 9, p.d1 % 9) not in CASE_I_RESIDUES:
            continue
        if any(legendre_symbol(3 * p.d2, q) != 1 for q in prime_divisors(p.d1) if q > 2):
            continue
        if any(q % 3 != 1 for q in prime_divisors(p.d2) if q > 2):
            continue
        out.append(p)
    return out


def case_ii_pairs(D: int) -> list[DivisorPair]:
    if D == 0:
        raise ValueError("D must be nonzero")
    sp = SieveProblem(D)
    out = []
    for p in divisor_pairs(D // 3 ** sp.tau):
        if not _structural(p):
            continue
        if any(legendre_symbol(p.d2, q) != 1 for q in prime_divisors(p.d1) if q > 2):
            continue
        if any(q % 3 != 1 for q in prime_divisors(p.d2) if q > 2):
            continue
        out.append(p)
    return out


@dataclass(frozen=True)
class OmegaForm:
    """Forms read off (m + n*w)(a + b*w)^6 = x + y*w.

    F1 = y and F2 = x - 2y, which removes the (2 + w) multiple of Y3^6 and
    leaves Y2^2.
    """

    m: int
    n: int

    @property
    def d2(self) -> int:
        return self.m * self.m - self.m * self.n + self.n * self.n

    @property
    def f1(self) -> tuple[int, ...]:
        m, n = self.m, self.n
        return (n, 6 * (m - n), -15 * m, 20 * n, 15 * (m - n), -6 * m, n)

    @property
    def f2(self) -> tuple[int, ...]:
        m, n = self.m, self.n
        return (m - 2 * n, -6 * (2 * m - n), 15 * (m + n), 20 * (m - 2 * n),
                -15 * (2 * m - n), 6 * (m + n), m - 2 * n)

    @staticmethod
    def _eval(coeffs, a, b):
        return sum(c * a ** (6 - i) * b ** i for i, c in enumerate(coeffs))

    def F1(self, a, b):
        return self._eval(self.f1, a, b)

    def F2(self, a, b):
        return self._eval(self.f2, a, b)


def omega_forms(m: int, n: int, d2: int | None = None) -> OmegaForm:
    form = OmegaForm(m, n)
    if d2 is not None and form.d2 != d2:
        raise ValueError(f"m^2 - mn + n^2 = {form.d2}, not {d2}")
    return form


def norm_representations(d2: int, normalized: bool = True) -> list[tuple[int, int]]:
    """(m, n) with m^2 - mn + n^2 = d2, one of each +- pair.

    With ``normalized`` only m != 0, n = 0 (mod 3) are kept, which picks
    one associate under multiplication by units of Z[w].
    """
    out = set()
    r = 2 * isqrt(d2) + 2
    for m in range(-r, r + 1):
        for n in range(-r, r + 1):
            if m * m - m * n + n * n != d2:
                continue
            if normalized and (m % 3 == 0 or n % 3 != 0):
                continue
            out.add(max((m, n), (-m, -n)))
    return sorted(out)


# --- the c1 c2 curves ----------------------------------------------------

def curve_for(c: int) -> MordellCurve:
    """Mordell model y^2 = x^3 + 64 c^2 shared by both curves of a pair."""
    return MordellCurve(64 * c * c)


def curve1_map(c1: int, u: Fraction, w: Fraction) -> Point:
    """u(u-1) = 2 c1 w^3  ->  y^2 = x^3 + 64 c1^2.

    With T = 2u - 1 the relation reads T^2 = 8 c1 w^3 + 1; multiplying by
    (8 c1)^2 gives (8 c1 T)^2 = (8 c1 w)^3 + 64 c1^2.
    """
    return Point(Fraction(8 * c1) * w, Fraction(8 * c1) * (2 * u - 1))


def curve1_u(c1: int, P: Point) -> Fraction | None:
    if P.is_inf:
        return None
    return (P.y / (8 * c1) + 1) / 2


def curve2_map(c2: int, u: Fraction, w: Fraction) -> Point:
    """(u+1)(2u-1)(u-2) = 2 c2 w^3  ->  y^2 = x^3 + 64 c2^2.

    T = 2u - 1 turns the cubic into T^3 - 9T = 8 c2 w^3.  Put T = 3s and
    v = 2w/3 to get s^3 - s = c2 v^3, then sigma = 1/s, mu = v/s gives
    sigma^2 = 1 - c2 mu^3, i.e. (c2 sigma)^2 = (-c2 mu)^3 + c2^2.  Scaling
    by (4, 8) lands on the model shared with the first curve.  The point
    T = 0 (u = 1/2) goes to O.
    """
    T = 2 * u - 1
    if T == 0:
        return Point(None, None)
    return Point(-8 * c2 * w / T, 24 * c2 / T)


def curve2_u(c2: int, P: Point) -> Fraction | None:
    if P.is_inf:
        return Fraction(1, 2)
    if P.y == 0:
        return None
    return (24 * c2 / P.y + 1) / 2


def admissible_ratio(u: Fraction | None) -> bool:
    """u = a/b with ab odd, a + b prime to 3 and no linear factor zero."""
    if u is None:
        return False
    a, b = u.numerator, u.denominator
    if a * b % 2 == 0 or (a + b) % 3 == 0:
        return False
    return all(f != 0 for f in _linear_factors(a, b))


def _linear_factors(a, b):
    return (a, b, a - b, a + b, 2 * a - b, a - 2 * b)


# --- local obstruction for one split of the six factors -----------------

def _halves(a, b, p):
    h = pow(2, -1, p)
    return (a % p, b % p, (a - b) * h % p, (a + b) * h % p, (2 * a - b) % p, (a - 2 * b) % p)


def _coset_table(p: int):
    """Map unit residues to coset ids of +-(F_p^*)^6 and list factor vectors."""
    sub = {pow(x, 6, p) for x in range(1, p)}
    sub |= {(-s) % p for s in sub}
    coset, nxt = {}, 0
    for x in range(1, p):
        if x in coset:
            continue
        for s in sub:
            coset[x * s % p] = nxt
        nxt += 1
    seen = set()
    for a in range(p):
        for b in range(p):
            if a == 0 and b == 0:
                continue
            seen.add(tuple(-1 if f == 0 else coset[f] for f in _halves(a, b, p)))
    return coset, seen


_COSETS: dict[int, tuple] = {}


def _split_killed_at(g: tuple[int, ...], p: int) -> bool:
    """No (a, b) mod p has every factor in +-g_i * (sixth power) or zero."""
    if p not in _COSETS:
        _COSETS[p] = _coset_table(p)
    coset, vectors = _COSETS[p]
    need = []
    for gi in g:
        need.append(-2 if gi % p == 0 else coset[gi % p])
    for vec in vectors:
        ok = True
        for want, got in zip(need, vec):
            if want == -2:
                if got != -1:
                    ok = False
                    break
            elif got != -1 and got != want:
                ok = False
                break
        if ok:
            return False
    return True


def _splits(Nexact: int, c1_part: int):
    """Assignments of the sixth-power-free content to the six factors.

    Only primes with exponent not divisible by 6 are placed.  The prime 2
    can only sit on (a-b)/2 or (a+b)/2, the prime 3 only on a, b or (a-b)/2,
    and the first three factors must multiply to ``c1_part``.
    """
    f = {q: e % 6 for q, e in factorize(Nexact).items() if e % 6}
    qs = sorted(f)
    slots = []
    for q in qs:
        first = c1_part % q == 0
        allowed = [0, 1, 2] if first else [3, 4, 5]
        if q == 2:
            allowed = [i for i in allowed if i in (2, 3)]
        if q == 3:
            allowed = [i for i in allowed if i in (0, 1, 2)]
        slots.append(allowed)
    for choice in product(*slots):
        g = [1] * 6
        for q, i in zip(qs, choice):
            g[i] *= q ** f[q]
        yield tuple(g)


@dataclass
class PairWitness:
    c1_exact: int
    c2_exact: int
    method: str
    detail: dict = field(default_factory=dict)

    @property
    def c1(self):
        return cube_free_part(self.c1_exact)

    @property
    def c2(self):
        return cube_free_part(self.c2_exact)


@dataclass
class C1C2Certificate:
    N: int
    exact: int | None
    pairs: list[PairWitness]


def _exact_pairs(n: int):
    ps = sorted(factorize(n))
    for mask in product((0, 1), repeat=len(ps)):
        c1 = 1
        for q, bit in zip(ps, mask):
            if bit:
                c1 *= q ** factorize(n)[q]
        yield c1, n // c1


def _rank0_pair(c1: int, c2: int, facts):
    for side, c, to_u in (("curve1", c1, curve1_u), ("curve2", c2, curve2_u)):
        E = curve_for(c)
        red, _ = E.reduced()
        fact = facts.get(red.c) if facts is not None else None
        if fact is None or fact.rank != 0 or not fact.verified:
            continue
        tors = torsion_points(E)
        us = [to_u(c, T) for T in tors]
        if any(admissible_ratio(u) for u in us):
            return None
        return {"side": side, "curve": red.c, "torsion": len(tors),
                "ratios": [str(u) for u in us]}
    return None


def eliminate_c1c2(N: int, facts, exact: int | None = None,
                   primes=None) -> C1C2Certificate:
    """Eliminate every coprime pair c1*c2 = N.

    ``exact`` is the product P1*P2 up to sixth powers, where P1 = ab(a-b)/2
    and P2 = (a+b)(2a-b)(a-2b)/2.  When given, pairs come from its coprime
    splits and a pair without a rank-0 curve may still die locally: every
    way of spreading its content over the six pairwise coprime linear
    factors is tested mod small primes.  Raises IncompleteElimination when
    some pair survives both routes.
    """
    if N <= 0:
        raise ValueError("N must be positive")
    if exact is not None and cube_free_part(exact) != N:
        raise ValueError(f"cube-free part of {exact} is not {N}")
    primes = primes or [p for p in primes_up_to(200) if p > 3]
    if exact is None:
        pairs = [(d.d1, d.d2) for d in divisor_pairs(N) if gcd(d.d1, d.d2) == 1]
        pairs = [(c2, c1) for c1, c2 in pairs]
        pairs.sort()
    else:
        pairs = sorted(_exact_pairs(exact))
    done, failed = [], []
    for c1x, c2x in pairs:
        c1, c2 = cube_free_part(c1x), cube_free_part(c2x)
        w = _rank0_pair(c1, c2, facts)
        if w is not None:
            done.append(PairWitness(c1x, c2x, "rank0", w))
            continue
        if exact is not None:
            kills = {}
            for g in _splits(exact, c1x):
                p = next((p for p in primes if _split_killed_at(g, p)), None)
                if p is None:
                    break
                kills[g] = p
            else:
                done.append(PairWitness(c1x, c2x, "local-split", {"splits": kills}))
                continue
        failed.append((c1, c2))
    if failed:
        raise IncompleteElimination(failed)
    return C1C2Certificate(N, exact, done)


# --- congruence test of the two quartics ---------------------------------

QUARTIC_MODULI = (7, 8, 9, 13, 16)


def quartic_locally_unsolvable(D: int, case: str, d2: int, d1: int, m: int) -> bool:
    """No residues (Y2, Y3, Y4) mod m satisfy the case quartic and its gcd rules.

    Case i:  X = Y2^2 + d1 Y3^6 and 3Y2^4 + 3d1 Y2^2 Y3^6 + d1^2 Y3^12 = d2 Y4^6.
    Case ii: X = Y2^2 + 3^nu d1 Y3^6 and
             Y2^4 + 3^nu d1 Y2^2 Y3^6 + 3^(2nu-1) d1^2 Y3^12 = d2 Y4^6.
    Side conditions: (2 d1 Y3, d2 Y4) = 1, (X, Y2 Y3 Y4) = 1 (with a factor
    3 in case ii), (Y2, D Y3 Y4) = 1, and in case i both 3 | Y3 Y4 and
    3 | X - Y2^2 are excluded.
    """
    sp = SieveProblem(D)
    ps = prime_divisors(m)
    if case == "i":
        s, c4, c2, c0, x3 = 1, 3, 3 * d1, d1 * d1, 1
    else:
        s = 3 ** sp.nu
        c4, c2, c0 = 1, s * d1, 3 ** (2 * sp.nu - 1) * d1 * d1
        x3 = 3 if sp.nu + 1 - sp.tau > 0 else 1
    six = [pow(y, 6, m) for y in range(m)]
    rhs: dict[int, list[int]] = {}
    for y4 in range(m):
        rhs.setdefault(d2 * six[y4] % m, []).append(y4)
    for y2 in range(m):
        for y3 in range(m):
            t = six[y3]
            lhs = (c4 * pow(y2, 4, m) + c2 * y2 * y2 * t + c0 * t * t) % m
            X = (y2 * y2 + (d1 if case == "i" else s * d1) * t) % m
            for y4 in rhs.get(lhs, ()):
                bad = False
                for p in ps:
                    if (2 * d1 * y3) % p == 0 and (d2 * y4) % p == 0:
                        bad = True
                    elif X % p == 0 and (x3 * y2 * y3 * y4) % p == 0:
                        bad = True
                    elif y2 % p == 0 and (D * y3 * y4) % p == 0:
                        bad = True
                    elif case == "i" and p == 3 and (y3 * y4 % 3 == 0 or (X - y2 * y2) % 3 == 0):
                        bad = True
                    if bad:
                        break
                if not bad:
                    return False
    return True


def quartic_obstruction(D: int, case: str, d2: int, d1: int, moduli=QUARTIC_MODULI):
    return next((m for m in moduli if quartic_locally_unsolvable(D, case, d2, d1, m)), None)


# --- whole sieve ---------------------------------------------------------

@dataclass
class SieveResult:
    D: int
    tau: int
    nu: int
    case_i: list
    case_ii: list
    eliminated: dict
    residual: list

    @property
    def complete(self) -> bool:
        return not self.residual


def exact_constant(D: int, d1: int) -> int:
    """Sixth-power class of P1*P2 when d2 = 1, m = +-1, n = 0.

    F1 = 3 * ab(a-b)(a+b)(2a-b)(a-2b), so the product of the six factors is
    3^(nu-2) * d1 * Y3^6 up to sign; dividing by 4 uses (a-b)(a+b) being
    divisible by 8, which borrows 2^6 from Y3 when d1 is short of a 4.
    """
    nu = SieveProblem(D).nu
    num = 3 ** (nu - 2) * abs(d1)
    return num // 4 if num % 4 == 0 else num * 16


def sieve_221(D: int, facts) -> SieveResult:
    """Run both cases for one D; ``complete`` on the result means no solutions.

    Pairs passing the listed residue conditions are next tested by
    congruences on their quartic.  Case ii pairs still alive with d2 = 1
    go through the c1 c2 elimination; anything else is reported residual.
    """
    sp = SieveProblem(D)
    ci = case_i_pairs(D)
    cii = case_ii_pairs(D)
    eliminated, residual = {}, []
    for p in ci:
        m = quartic_obstruction(D, "i", p.d2, p.d1)
        if m is None:
            residual.append(("case i", (p.d2, p.d1)))
        else:
            eliminated[("i", p.d2, p.d1)] = {"modulus": m}
    for p in cii:
        m = quartic_obstruction(D, "ii", p.d2, p.d1)
        if m is not None:
            eliminated[("ii", p.d2, p.d1)] = {"modulus": m}
            continue
        reps = norm_representations(p.d2, normalized=sp.tau != 2)
        if sp.tau == 2 or p.d2 != 1 or any(n != 0 for _, n in reps):
            residual.append(("case ii", (p.d2, p.d1)))
            continue
        Nx = exact_constant(D, p.d1)
        try:
            eliminated[("ii", p.d2, p.d1)] = eliminate_c1c2(cube_free_part(Nx), facts, exact=Nx)
        except IncompleteElimination as exc:
            residual.append(("case ii", (p.d2, p.d1), exc.pairs))
    return SieveResult(D, sp.tau, sp.nu, ci, cii, eliminated, residual)


def sieve_target(eq):
    """(D, swap, flip) when eq has the shape D*Y1^6 + Y2^6 = X^3, else None."""
    if eq.kind == "I":
        return None
    if eq.d2 == 1:
        return eq.a1, False, False
    if eq.kind == "III" and eq.d1 == 1:
        return eq.d2, True, False
    if eq.kind == "III" and eq.d1 == -1:
        return -eq.d2, True, True
    return None
