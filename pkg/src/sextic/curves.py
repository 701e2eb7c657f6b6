"""Mordell curves y^2 = x^3 + c over Q and over F_p."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .arith import factorize, is_cube, power_content


@dataclass(frozen=True)
class Point:
    """Affine rational point; the point at infinity is the ``O`` singleton."""

    x: Fraction | None
    y: Fraction | None

    @property
    def is_inf(self) -> bool:
        return self.x is None

    def __neg__(self):
        return self if self.is_inf else Point(self.x, -self.y)

    def __repr__(self):
        if self.is_inf:
            return "O"
        return f"({self.x}, {self.y})"


O = Point(None, None)


def pt(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


@dataclass(frozen=True)
class ModPoint:
    x: int | None
    y: int | None

    @property
    def is_inf(self) -> bool:
        return self.x is None

    def __repr__(self):
        return "O" if self.is_inf else f"({self.x}, {self.y})"


O_MOD = ModPoint(None, None)


@dataclass(frozen=True)
class MordellCurve:
    c: int

    def __post_init__(self):
        if self.c == 0:
            raise ValueError("c = 0 gives a singular curve")

    def contains(self, P: Point) -> bool:
        return P.is_inf or P.y * P.y == P.x ** 3 + self.c

    def add(self, P: Point, Q: Point) -> Point:
        return add(self, P, Q)

    def mul(self, n: int, P: Point) -> Point:
        return multiply(self, n, P)

    def reduced(self) -> tuple["MordellCurve", int]:
        """Sixth-power-free twin and the scale s with c = c_red * s^6."""
        s = power_content(self.c, 6)
        return MordellCurve(self.c // s ** 6), s

    def __repr__(self):
        return f"y^2 = x^3 + ({self.c})"


def add(E: MordellCurve, P: Point, Q: Point) -> Point:
    if P.is_inf:
        return Q
    if Q.is_inf:
        return P
    if P.x == Q.x:
        if P.y != Q.y or P.y == 0:
            return O
        lam = 3 * P.x * P.x / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return Point(x3, y3)


def multiply(E: MordellCurve, n: int, P: Point) -> Point:
    if n < 0:
        return multiply(E, -n, -P)
    acc = O
    base = P
    while n:
        if n & 1:
            acc = add(E, acc, base)
        n >>= 1
        if n:
            base = add(E, base, base)
    return acc


def scale_point(P: Point, s) -> Point:
    """Image of P under (x, y) -> (s^2 x, s^3 y); s may be rational."""
    if P.is_inf:
        return P
    s = Fraction(s)
    return Point(P.x * s * s, P.y * s ** 3)


def order_if_torsion(E: MordellCurve, P: Point, bound: int = 12) -> int | None:
    """Order of P when it is at most ``bound`` (Mazur: 12 covers Q), else None."""
    Q = P
    for n in range(1, bound + 1):
        if Q.is_inf:
            return n
        Q = add(E, Q, P)
    return None


def _square_divisors(n: int):
    """All y > 0 with y^2 | n."""
    f = factorize(n)
    primes = list(f)
    for exps in product(*[range(f[p] // 2 + 1) for p in primes]):
        y = 1
        for p, e in zip(primes, exps):
            y *= p ** e
        yield y


def torsion_points(E: MordellCurve) -> list[Point]:
    """Rational torsion subgroup, sorted with O first.

    Lutz-Nagell on the sixth-power-free twin: torsion points are integral
    with y = 0 or y^2 | 432 c^2.  Each candidate is confirmed by computing
    its multiples, since integrality alone does not imply finite order.
    """
    Er, s = E.reduced()
    c = Er.c
    cands = []
    x0 = is_cube(-c)
    if x0 is not None:
        cands.append(pt(x0, 0))
    for y in _square_divisors(432 * c * c):
        x = is_cube(y * y - c)
        if x is not None:
            cands += [pt(x, y), pt(x, -y)]
    tors = [O] + [P for P in cands if order_if_torsion(Er, P) is not None]
    return sorted((scale_point(P, s) for P in tors), key=_point_key)


def _point_key(P: Point):
    return (0,) if P.is_inf else (1, P.x, P.y)


# reduction mod p

def _good_prime(E: MordellCurve, p: int):
    if (6 * E.c) % p == 0:
        raise ValueError(f"bad reduction at p={p} for c={E.c}")


def reduce_mod_p(E: MordellCurve, P: Point, p: int) -> ModPoint:
    _good_prime(E, p)
    if P.is_inf or P.x.denominator % p == 0:
        return O_MOD
    return ModPoint(
        P.x.numerator * pow(P.x.denominator, -1, p) % p,
        P.y.numerator * pow(P.y.denominator, -1, p) % p,
    )


def mod_contains(c: int, P: ModPoint, p: int) -> bool:
    return P.is_inf or (P.y * P.y - P.x ** 3 - c) % p == 0


def mod_add(c: int, P: ModPoint, Q: ModPoint, p: int) -> ModPoint:
    if P.is_inf:
        return Q
    if Q.is_inf:
        return P
    if P.x == Q.x:
        if (P.y + Q.y) % p == 0:
            return O_MOD
        lam = 3 * P.x * P.x * pow(2 * P.y, -1, p) % p
    else:
        lam = (Q.y - P.y) * pow(Q.x - P.x, -1, p) % p
    x3 = (lam * lam - P.x - Q.x) % p
    y3 = (lam * (P.x - x3) - P.y) % p
    return ModPoint(x3, y3)


def mod_neg(P: ModPoint, p: int) -> ModPoint:
    return P if P.is_inf else ModPoint(P.x, -P.y % p)


def mod_mul(c: int, n: int, P: ModPoint, p: int) -> ModPoint:
    if n < 0:
        n, P = -n, mod_neg(P, p)
    acc, base = O_MOD, P
    while n:
        if n & 1:
            acc = mod_add(c, acc, base, p)
        n >>= 1
        base = mod_add(c, base, base, p)
    return acc


def point_order_mod_p(E: MordellCurve, P: ModPoint, p: int) -> int:
    _good_prime(E, p)
    n, Q = 1, P
    while not Q.is_inf:
        Q = mod_add(E.c, Q, P, p)
        n += 1
    return n


def points_mod_p(E: MordellCurve, p: int) -> list[ModPoint]:
    """Every point of E(F_p), O first.  Brute force; p is small here."""
    _good_prime(E, p)
    roots: dict[int, list[int]] = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    out = [O_MOD]
    for x in range(p):
        for y in roots.get((x ** 3 + E.c) % p, []):
            out.append(ModPoint(x, y))
    return out


def subgroup_mod_p(c: int, gens, p: int) -> set[ModPoint]:
    """Subgroup of E(F_p) generated by ``gens`` (closure under addition)."""
    group = {O_MOD}
    frontier = [O_MOD]
    gens = [g for g in gens if not g.is_inf]
    while frontier:
        nxt = []
        for P in frontier:
            for g in gens:
                Q = mod_add(c, P, g, p)
                if Q not in group:
                    group.add(Q)
                    nxt.append(Q)
        frontier = nxt
    return group
