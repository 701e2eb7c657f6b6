"""Descent from Y^2 = X^6 + k to the equations A*y1^6 + B*y2^6 = y3^3.

Writing X = x/y in lowest terms turns a rational point into a primitive
solution of x^6 + k*y^6 = z^2.  Factoring (z - x^3)(z + x^3) = k*y^6 over
the integers leaves one of four normalized shapes (kinds I-IV below), each
indexed by a divisor pair (d1, d2).  Every such equation covers three
Mordell curves E1, E2, E3; rank-0 information on any one of them settles
the equation.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .arith import (
    divisor_pairs, is_cube, positive_divisors, prime_divisors, primes_up_to, rational_root,
    sixth_power_free,
)
from .curves import MordellCurve, Point, scale_point, torsion_points

log = logging.getLogger(__name__)

KINDS = ("I", "II", "III", "IV")
COVERS = ("E1", "E2", "E3")


@dataclass(frozen=True)
class Coprime:
    """gcd(cl * prod(vl), cr * prod(vr)) == 1 for integer unknowns vl, vr."""

    cl: int
    vl: tuple
    cr: int
    vr: tuple

    def holds(self, sol: dict) -> bool:
        left = self.cl
        for v in self.vl:
            left *= sol[v]
        right = self.cr
        for v in self.vr:
            right *= sol[v]
        return gcd(left, right) == 1

    def violated_mod(self, p: int, res: dict) -> bool:
        """True when p must divide both sides for residues ``res`` mod p^j."""
        left = self.cl % p == 0 or any(res[v] % p == 0 for v in self.vl)
        right = self.cr % p == 0 or any(res[v] % p == 0 for v in self.vr)
        return left and right

    def __str__(self):
        def side(c, vs):
            return "*".join([str(c)] * (c != 1) + list(vs)) or "1"
        return f"({side(self.cl, self.vl)}, {side(self.cr, self.vr)}) = 1"


@dataclass(frozen=True)
class DescentEquation:
    """C*x^3 = a1*y1^6 + a2*y2^6 in one of the four normalized kinds."""

    kind: str
    k: int
    d1: int
    d2: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind}")
        if self.d2 <= 0:
            raise ValueError("d2 must be positive")
        target = {"I": -self.k, "II": -self.k, "III": -self.k // 4, "IV": -self.k // 2}
        if self.d1 * self.d2 != target[self.kind]:
            raise ValueError(f"d1*d2 != {target[self.kind]} for kind {self.kind}")

    @property
    def delta(self) -> int:
        return gcd(self.d1, self.d2)

    @property
    def C(self) -> int:
        return 2 if self.kind == "I" else 1

    @property
    def a1(self) -> int:
        return {"I": 1, "II": 16, "III": 1, "IV": 32}[self.kind] * self.d1

    @property
    def a2(self) -> int:
        return self.d2

    @property
    def A(self) -> int:
        return 4 * self.d1 if self.kind == "I" else self.a1

    @property
    def B(self) -> int:
        return 4 * self.d2 if self.kind == "I" else self.d2

    def y3(self, x: int) -> int:
        # For kind I, 4*(2x^3) = (2x)^3.
        return 2 * x if self.kind == "I" else x

    @property
    def conditions(self) -> tuple[Coprime, ...]:
        e1, e2 = self.d1 // self.delta, self.d2 // self.delta
        if self.kind == "I":
            return (Coprime(e1, ("y1",), e2, ("y2",)), Coprime(2, ("x",), 1, ("y1", "y2")))
        if self.kind == "III":
            return (Coprime(e1, ("y1",), e2, ("y2",)), Coprime(1, ("x",), 1, ("y1", "y2")))
        return (Coprime(2 * e1, ("y1",), e2, ("y2",)), Coprime(1, ("x",), 2, ("y1", "y2")))

    def is_solution(self, x: int, y1: int, y2: int) -> bool:
        if y1 * y2 == 0:
            return False
        if self.C * x ** 3 != self.a1 * y1 ** 6 + self.a2 * y2 ** 6:
            return False
        sol = {"x": x, "y1": y1, "y2": y2}
        return all(c.holds(sol) for c in self.conditions)

    def to_curve_point(self, x: int, y1: int, y2: int) -> tuple[Fraction, Fraction]:
        """The point (X, Y) on Y^2 = X^6 + k carried by a solution."""
        if self.kind == "I":
            y = y1 * y2
            z = Fraction(self.d2 * y2 ** 6 - self.d1 * y1 ** 6, 2)
        else:
            y = 2 * y1 * y2 if self.kind in ("II", "IV") else y1 * y2
            z = self.d2 * y2 ** 6 - self.a1 * y1 ** 6
        return Fraction(x, y), Fraction(z) / Fraction(y) ** 3

    @property
    def label(self) -> str:
        return f"{self.kind}({self.d1},{self.d2})"

    def __str__(self):
        lhs = "2*x^3" if self.C == 2 else "x^3"
        return f"{self.label}: {lhs} = {self.a1}*y1^6 + {self.a2}*y2^6"


@dataclass(frozen=True)
class DroppedPair:
    eq: DescentEquation
    modulus: int


@dataclass
class EliminationCertificate:
    """Witness that settles one descent equation.

    ``solutions`` lists the primitive solutions (x, y1, y2) left over; an
    empty list means the equation is impossible.
    """

    method: str
    eq: DescentEquation
    witness: dict = field(default_factory=dict)
    solutions: list = field(default_factory=list)

    def digest(self) -> str:
        keys = ",".join(f"{k}={self.witness[k]}" for k in sorted(self.witness) if k != "trace")
        label = self.eq.label if self.eq is not None else "-"
        return f"{self.method}[{label}]{{{keys}}}"


def _canonical(kind: str, d1: int, d2: int) -> bool:
    # Kinds I and III are symmetric under swapping y1, y2 (and x -> -x
    # when that is needed to keep d2 > 0); keep the member with |d1| <= d2.
    return kind not in ("I", "III") or abs(d1) <= d2


def generate_S(k: int, drops: list | None = None) -> list[DescentEquation]:
    """The descent set for k, kinds I/II (k odd), III (4 | k), IV (k = 2 mod 4).

    Pairs sharing a prime p are dropped when the equation is already
    impossible mod p^2; each drop is appended to ``drops`` when given.
    """
    if k == 0 or not sixth_power_free(k):
        raise ValueError(f"k={k} must be nonzero and sixth-power-free")
    if k % 2:
        plan = [("I", -k), ("II", -k)]
    elif k % 4 == 0:
        plan = [("III", -k // 4)]
    else:
        plan = [("IV", -k // 2)]
    out = []
    for kind, N in plan:
        for pair in divisor_pairs(N):
            if not _canonical(kind, pair.d1, pair.d2):
                continue
            eq = DescentEquation(kind, k, pair.d1, pair.d2)
            dropped = False
            if pair.delta > 1:
                for p in prime_divisors(pair.delta):
                    if locally_unsolvable(eq, p * p):
                        log.info("dropping %s: no solution mod %d", eq, p * p)
                        if drops is not None:
                            drops.append(DroppedPair(eq, p * p))
                        dropped = True
                        break
            if not dropped:
                out.append(eq)
    return out


def locally_unsolvable(eq: DescentEquation, m: int) -> bool:
    """Exhaust (x, y1, y2) mod m under the coprimality side conditions."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    ps = prime_divisors(m)
    by_lhs: dict[int, list[int]] = {}
    for x in range(m):
        by_lhs.setdefault(eq.C * pow(x, 3, m) % m, []).append(x)
    six = [pow(y, 6, m) for y in range(m)]
    conds = eq.conditions
    for y1 in range(m):
        t1 = eq.a1 * six[y1]
        for y2 in range(m):
            for x in by_lhs.get((t1 + eq.a2 * six[y2]) % m, ()):
                res = {"x": x, "y1": y1, "y2": y2}
                if not any(c.violated_mod(p, res) for c in conds for p in ps):
                    return False
    return True


def covering_curve(eq: DescentEquation, which: str) -> MordellCurve:
    A, B = eq.A, eq.B
    if which == "E1":
        return MordellCurve(-A ** 3 * B)
    if which == "E2":
        return MordellCurve(-A * B ** 3)
    if which == "E3":
        # Integral model of y^2 = x^3 - (27/4) A^2 B^2 via (x, y) -> (4x, 8y).
        return MordellCurve(-432 * A * A * B * B)
    raise ValueError(f"unknown cover {which}")


def cover_models(eq: DescentEquation, which: str) -> tuple[MordellCurve, MordellCurve, int]:
    """(raw, reduced, s) with raw.c = reduced.c * s^6."""
    raw = covering_curve(eq, which)
    red, s = raw.reduced()
    return raw, red, s


def map_to_cover(eq: DescentEquation, sol: tuple[int, int, int], which: str) -> Point:
    """Image of a solution on the raw covering curve."""
    x, y1, y2 = sol
    if y1 * y2 == 0:
        raise ValueError("y1*y2 must be nonzero")
    A, B = eq.A, eq.B
    y3 = eq.y3(x)
    if which == "E1":
        return Point(Fraction(A * y3, y2 ** 2), Fraction(A * A * y1 ** 3, y2 ** 3))
    if which == "E2":
        return Point(Fraction(B * y3, y1 ** 2), Fraction(B * B * y2 ** 3, y1 ** 3))
    if which == "E3":
        s1, s2 = y1 ** 6, y2 ** 6
        X = Fraction(y3 ** 6 - A * B * s1 * s2, y1 ** 4 * y2 ** 4 * y3 ** 2)
        Y = Fraction((A * s1 - B * s2) * (2 * A * s1 + B * s2) * (A * s1 + 2 * B * s2),
                     2 * s1 * s2 * y3 ** 3)
        return Point(4 * X, 8 * Y)
    raise ValueError(f"unknown cover {which}")


def _solution_from_ratio(eq: DescentEquation, t: Fraction):
    """Primitive (x, y1, y2) with y1/y2 = t, when one exists."""
    if t == 0:
        return None
    y1, y2 = abs(t.numerator), t.denominator
    y3 = is_cube(eq.A * y1 ** 6 + eq.B * y2 ** 6)
    if y3 is None:
        return None
    if eq.kind == "I":
        if y3 % 2:
            return None
        x = y3 // 2
    else:
        x = y3
    return (x, y1, y2) if eq.is_solution(x, y1, y2) else None


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """Rational roots of sum(coeffs[i] * r^i).

    Simple roots mod a small prime are Hensel-lifted and then recovered
    by rational reconstruction, so no divisor enumeration of the (often
    huge) end coefficients is needed. Candidates are checked exactly.
    """
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    roots = set()
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints.pop(0)
    if len(ints) < 2:
        return sorted(roots)
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    deriv = [i * c for i, c in enumerate(ints)][1:]
    lead, const = abs(ints[-1]), abs(ints[0])

    def ev(f, x, m):
        v = 0
        for c in reversed(f):
            v = (v * x + c) % m
        return v

    for ell in primes_up_to(2000)[1:]:
        if ints[-1] % ell == 0:
            continue
        lifts = [r for r in range(ell) if ev(ints, r, ell) == 0]
        if any(ev(deriv, r, ell) == 0 for r in lifts):
            continue  # repeated root mod ell
        break
    else:
        return sorted(roots | _rational_roots_by_divisors(ints))
    bound = 2 * lead * const + 1
    for r in lifts:
        m = ell
        while m < bound:
            m *= m
            r = (r - ev(ints, r, m) * pow(ev(deriv, r, m), -1, m)) % m
        q = _reconstruct(r, m, const, lead)
        if q is not None and sum(c * q ** i for i, c in enumerate(ints)) == 0:
            roots.add(q)
    return sorted(roots)


def _reconstruct(r: int, m: int, nbound: int, dbound: int) -> Fraction | None:
    """p/q with p = q r mod m, |p| <= nbound, 0 < q <= dbound, if any."""
    r0, r1, t0, t1 = m, r % m, 0, 1
    while r1 > nbound:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        t0, t1 = t1, t0 - qt * t1
    if t1 == 0 or abs(t1) > dbound:
        return None
    return Fraction(r1, t1)


def _rational_roots_by_divisors(ints: list[int]) -> set[Fraction]:
    out = set()
    for p in positive_divisors(ints[0]):
        for q in positive_divisors(ints[-1]):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * r ** i for i, c in enumerate(ints)) == 0:
                    out.add(r)
    return out


def pull_back(eq: DescentEquation, P: Point, which: str) -> list[tuple[int, int, int]]:
    """Primitive solutions of eq whose image on the raw cover is P."""
    if P.is_inf:
        return []
    A, B = eq.A, eq.B
    out = []
    if which in ("E1", "E2"):
        lead = A if which == "E1" else B
        t = rational_root(P.y / (lead * lead), 3)
        if t is not None and t != 0:
            if which == "E2":
                t = 1 / t
            sol = _solution_from_ratio(eq, t)
            if sol is not None and map_to_cover(eq, sol, which) == P:
                out.append(sol)
        return out
    # E3: the ratio r = A*y1^6 / (B*y2^6) satisfies
    # 2r^3 + (3 - 2w) r^2 - (3 + 2w) r - 2 = 0 with w = Y / (AB).
    w = P.y / 8 / (A * B)
    for r in _rational_roots([Fraction(-2), -3 - 2 * w, 3 - 2 * w, Fraction(2)]):
        if r == 0 or r == -1:
            continue
        t = rational_root(r * B / A, 6)
        if t is None:
            continue
        sol = _solution_from_ratio(eq, t)
        if sol is not None and map_to_cover(eq, sol, which) == P:
            out.append(sol)
    return out


def eliminate_by_rank0(eq: DescentEquation, facts) -> EliminationCertificate | None:
    """Settle eq from a rank-0 cover, listing whatever solutions survive."""
    for which in COVERS:
        raw, red, s = cover_models(eq, which)
        fact = facts.get(red.c)
        if fact is None or fact.rank != 0 or not fact.verified:
            continue
        tors = torsion_points(red)
        sols, trace = set(), []
        for T in tors:
            P = scale_point(T, s)
            got = pull_back(eq, P, which)
            trace.append((T, got))
            sols.update(got)
        return EliminationCertificate(
            method="RankZero" + which,
            eq=eq,
            witness={"curve": red.c, "scale": s, "torsion": len(tors),
                     "source": fact.source, "trace": trace},
            solutions=sorted(sols),
        )
    return None


def local_certificate(eq: DescentEquation, moduli=(7, 8, 9, 13)) -> EliminationCertificate | None:
    for m in moduli:
        if locally_unsolvable(eq, m):
            return EliminationCertificate("LocalModM", eq, {"modulus": m, "residues": m ** 3})
    return None


def member_for_point(k: int, X: Fraction, Y: Fraction, members=None):
    """Members of the descent set (with solutions) that carry the point (X, Y).

    All four sign choices of (x, z) are tried, since (X, Y), (-X, Y),
    (X, -Y) and (-X, -Y) land on swapped or identical members.
    """
    X, Y = Fraction(X), Fraction(Y)
    if members is None:
        members = generate_S(k)
    index = {(e.kind, e.d1, e.d2): e for e in members}
    x0, y = X.numerator, X.denominator
    z0 = Y * y ** 3
    if z0.denominator != 1:
        return []
    z0 = int(z0)
    found = set()
    for sx in (1, -1):
        for sz in (1, -1):
            x, z = sx * x0, sz * z0
            for eq in members:
                sol = _decompose(eq.kind, k, x, y, z)
                if sol is None:
                    continue
                d1, d2, y1, y2 = sol
                cand = _canonical_member(eq.kind, k, d1, d2, x, y1, y2)
                if cand is None:
                    continue
                key, s = cand
                if key in index and index[key].is_solution(*s):
                    found.add((index[key], s))
    return sorted(found, key=lambda t: (t[0].kind, t[0].d2, t[0].d1, t[1]))


def _decompose(kind: str, k: int, x: int, y: int, z: int):
    """Split (z + x^3, z - x^3) into d2*y2^6 and -a1*y1^6 for the given kind."""
    if kind == "I":
        if y % 2 == 0:
            return None
        u, v, yy, mult = z + x ** 3, z - x ** 3, y, 1
    else:
        if (z + x ** 3) % 2:
            return None
        u, v = (z + x ** 3) // 2, (z - x ** 3) // 2
        if kind in ("II", "IV"):
            if y % 2:
                return None
            yy, mult = y // 2, 16 if kind == "II" else 32
        else:
            yy, mult = y, 1
    for y2 in positive_divisors(yy):
        y1 = yy // y2
        if u % y2 ** 6 or v % (mult * y1 ** 6):
            continue
        d2 = u // y2 ** 6
        d1 = -v // (mult * y1 ** 6)
        if d2 > 0 and d1 != 0:
            return d1, d2, y1, y2
    return None


def _canonical_member(kind, k, d1, d2, x, y1, y2):
    try:
        DescentEquation(kind, k, d1, d2)
    except ValueError:
        return None
    if _canonical(kind, d1, d2):
        return (kind, d1, d2), (x, y1, y2)
    if d1 > 0:
        return (kind, d2, d1), (x, y2, y1)
    return (kind, -d2, -d1), (-x, y2, y1)
