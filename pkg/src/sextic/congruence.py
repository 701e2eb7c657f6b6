"""Impossibility certificates from generator multiples modulo a prime.

A solution of a descent equation gives a point Q on a covering curve whose
second coordinate has the shape a*(y1/y2)^3 (or a*(y2/y1)^3).  When the
curve's Mordell-Weil group is known, Q mod p lies in the subgroup generated
by the reduced generators and torsion.  If no affine residue there has a
y-coordinate of the right shape, Q must reduce to O, which forces p into
y2 (resp. y1); a final enumeration of the equation mod p with that
variable zero closes the argument.
"""
from __future__ import annotations

import hashlib
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import factorize, primes_up_to
from .curves import (
    ModPoint, MordellCurve, Point, mod_mul, reduce_mod_p,
    subgroup_mod_p, torsion_points,
)
from .descent import DescentEquation, cover_models

CERT_SIDES = ("E1", "E2")


@dataclass(frozen=True)
class ResidueShape:
    """``a * t^e`` for t ranging over F_p; ``target`` names the coordinate."""

    a: Fraction
    e: int
    target: str = "y"

    def __post_init__(self):
        if self.e not in (3, 6):
            raise ValueError("exponent must be 3 or 6")

    def values(self, p: int) -> set[int]:
        a = _mod(self.a, p)
        return {a * pow(t, self.e, p) % p for t in range(p)}


@dataclass
class CongruenceCertificate:
    curve: MordellCurve
    generators: tuple
    p: int
    residues: frozenset
    shape: ResidueShape | None
    eq: DescentEquation | None = None
    side: str = ""
    trace: list = field(default_factory=list)
    method: str = "Congruence"

    def digest(self) -> str:
        body = "|".join([
            self.method, str(self.curve.c), str(self.p),
            ",".join(repr(g) for g in self.generators),
            ",".join(sorted(repr(r) for r in self.residues)),
        ])
        label = self.eq.label if self.eq is not None else "-"
        return f"{self.method}[{label}]{{p={self.p},curve={self.curve.c},sha={hashlib.sha256(body.encode()).hexdigest()[:12]}}}"


def _mod(q, p: int) -> int:
    q = Fraction(q)
    if q.denominator % p == 0:
        raise ValueError(f"{q} is not p-integral at {p}")
    return q.numerator * pow(q.denominator, -1, p) % p


def multiples_residue_set(E: MordellCurve, P: Point, p: int, step: int = 1) -> set[ModPoint]:
    """{n*P mod p}; with ``step`` only multiples of step*P are taken."""
    R = reduce_mod_p(E, P, p)
    if step != 1:
        R = mod_mul(E.c, step, R, p)
    return subgroup_mod_p(E.c, [R], p)


def residue_group(E: MordellCurve, gens, p: int, with_torsion: bool = True) -> set[ModPoint]:
    """Reduction of <gens> + torsion, i.e. all possible Q mod p."""
    pts = [reduce_mod_p(E, G, p) for G in gens]
    if with_torsion:
        pts += [reduce_mod_p(E, T, p) for T in torsion_points(E)]
    return subgroup_mod_p(E.c, pts, p)


def shape_solvable(shape: ResidueShape, r: int, p: int) -> bool:
    return r % p in shape.values(p)


def _side_data(eq: DescentEquation, side: str):
    """(reduced curve, shape, variable forced to 0 mod p on O)."""
    raw, red, s = cover_models(eq, side)
    lead = eq.A if side == "E1" else eq.B
    shape = ResidueShape(Fraction(lead * lead, s ** 3), 3)
    zero_var = "y2" if side == "E1" else "y1"
    return red, shape, zero_var, s


def _bad_primes(eq: DescentEquation, red: MordellCurve, s: int) -> set[int]:
    out = {2, 3}
    for n in (eq.A, eq.B, s, red.c):
        out |= set(factorize(n))
    return out


def _zero_case_impossible(eq: DescentEquation, var: str, p: int) -> bool:
    """No (x, y1, y2) mod p with ``var`` = 0 meets eq and its gcd rules."""
    for x in range(p):
        lhs = eq.C * pow(x, 3, p) % p
        for v in range(p):
            y1, y2 = (0, v) if var == "y1" else (v, 0)
            if (eq.a1 * pow(y1, 6, p) + eq.a2 * pow(y2, 6, p) - lhs) % p:
                continue
            res = {"x": x, "y1": y1, "y2": y2}
            if not any(c.violated_mod(p, res) for c in eq.conditions):
                return False
    return True


def side_for_fact(eq: DescentEquation, fact) -> str | None:
    for side in CERT_SIDES:
        if cover_models(eq, side)[1].c == fact.c:
            return side
    return None


def certify_impossible(eq: DescentEquation, fact, p: int) -> CongruenceCertificate | None:
    """Congruence certificate for eq at p from ``fact``, or None.

    None is returned whenever a step is inconclusive: unverified fact,
    bad prime, a residue of the right shape, or a solvable zero case.
    """
    if fact is None or not fact.verified or fact.rank == 0:
        return None
    side = side_for_fact(eq, fact)
    if side is None:
        return None
    red, shape, zero_var, s = _side_data(eq, side)
    if p in _bad_primes(eq, red, s):
        return None
    group = residue_group(red, fact.generators, p)
    trace = []
    for R in sorted(group, key=_mod_key):
        if R.is_inf:
            continue
        if shape_solvable(shape, R.y, p):
            return None
        trace.append(f"{R}: y = {R.y} not of the form a*t^3")
    if not _zero_case_impossible(eq, zero_var, p):
        return None
    trace.append(f"O forces {p} | {zero_var}; eq mod {p} then breaks coprimality")
    return CongruenceCertificate(red, tuple(fact.generators), p, frozenset(group),
                                 shape, eq, side, trace)


def certifying_primes(eq: DescentEquation, fact, bound: int = 100) -> list[int]:
    """Optional search mode: every good p <= bound that certifies eq."""
    return [p for p in primes_up_to(bound) if certify_impossible(eq, fact, p) is not None]


def _mod_key(R: ModPoint):
    return (0,) if R.is_inf else (1, R.x, R.y)


# --- parity variant ---------------------------------------------------------

@dataclass
class ParityReport:
    n_max: int
    by_class: dict
    violations: list

    @property
    def clean(self) -> bool:
        return not self.violations


@lru_cache(maxsize=64)
def parity_profile(E: MordellCurve, P: Point, n_max: int = 200,
                   odd_classes=(1, 2, 4, 5), stop_at_first: bool = False) -> ParityReport:
    """Parities of the Y-coordinate of n*P for n = 1..n_max, by n mod 6.

    A violation is any n in ``odd_classes`` whose Y does not have both
    numerator and denominator odd.  Results are cached per (E, P, n_max).
    """
    if n_max < 12:
        raise ValueError("n_max must be at least 12")
    by_class: dict[int, set] = {r: set() for r in range(6)}
    violations = []
    Q = Point(None, None)
    for n in range(1, n_max + 1):
        Q = E.add(Q, P)
        if Q.is_inf:
            raise ValueError("P is torsion")
        par = (Q.y.numerator % 2, Q.y.denominator % 2)
        by_class[n % 6].add(par)
        if n % 6 in odd_classes and par != (1, 1):
            violations.append(n)
            if stop_at_first:
                break
    return ParityReport(n_max, {r: sorted(v) for r, v in by_class.items()}, violations)


def certify_by_parity(eq: DescentEquation, fact, p: int, n_max: int = 200,
                      split: int = 3) -> CongruenceCertificate | None:
    """Parity and mod-p argument on a rank-1, torsion-free cover.

    Writing Q = n*P: for n prime to ``split`` the Y-coordinate of n*P is
    odd over odd (checked up to n_max), whereas the shape forces an even
    numerator.  The remaining n lie in <split*P>, which is then handled
    mod p exactly as in ``certify_impossible``.
    """
    if fact is None or not fact.verified or fact.rank != 1:
        return None
    side = side_for_fact(eq, fact)
    if side is None:
        return None
    red, shape, zero_var, s = _side_data(eq, side)
    if len(torsion_points(red)) != 1 or p in _bad_primes(eq, red, s):
        return None
    # The shape numerator must be even: a even with the other variable odd.
    odd_var = "y2" if side == "E1" else "y1"
    if shape.a.numerator % 2 or shape.a.denominator % 2 == 0 or not _forced_odd(eq, odd_var):
        return None
    P = fact.generators[0]
    group = multiples_residue_set(red, P, p, step=split)
    trace = []
    for R in sorted(group, key=_mod_key):
        if R.is_inf:
            continue
        if shape_solvable(shape, R.y, p):
            return None
        trace.append(f"{split}P-multiple {R}: y = {R.y} not of the form a*t^3")
    if not _zero_case_impossible(eq, zero_var, p):
        return None
    # the exact part last: it is the expensive one
    odd = tuple(r for r in range(6) if r % split)
    if not parity_profile(red, P, n_max, odd_classes=odd, stop_at_first=True).clean:
        return None
    trace.insert(0, f"n prime to {split}: Y odd/odd for n <= {n_max}, shape numerator even")
    trace.append(f"O forces {p} | {zero_var}; eq mod {p} then breaks coprimality")
    return CongruenceCertificate(red, (P,), p, frozenset(group), shape, eq, side,
                                 trace, method="ParityCongruence")


def _forced_odd(eq: DescentEquation, var: str) -> bool:
    """The gcd rules put 2 opposite ``var``."""
    return any((var in c.vr and c.cl % 2 == 0) or (var in c.vl and c.cr % 2 == 0)
               for c in eq.conditions)


def certify_80_3(facts, n_max: int = 200) -> CongruenceCertificate:
    """k = -15, 80*y1^6 + 3*y2^6 = x^3, via y^2 = x^3 - 375 and p = 19."""
    eq = DescentEquation("II", -15, 5, 3)
    fact = facts.get(-375)
    cert = certify_by_parity(eq, fact, 19, n_max=n_max)
    if cert is None:
        raise ValueError("parity/mod-19 certificate failed for 80*y1^6 + 3*y2^6 = x^3")
    return cert
