"""Height-bounded search for rational points on Y^2 = X^6 + k.

X = p/q in lowest terms has height max(|p|, q), and then Y = r/q^3 with
r^2 = p^6 + k*q^6.  Candidates are screened against square residues mod
64, 63, 65 and 11 before the exact isqrt test.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from pathlib import Path

from .arith import rational_root

log = logging.getLogger(__name__)

SIEVE_MODULI = (64, 63, 65, 11)
_SQUARES = {m: bytes(1 if any(x * x % m == r for x in range(m)) else 0 for r in range(m))
            for m in SIEVE_MODULI}


@dataclass(frozen=True, order=True)
class FoundPoint:
    X: Fraction
    Y: Fraction

    @property
    def height(self) -> int:
        return max(abs(self.X.numerator), self.X.denominator)

    def line(self, k: int) -> str:
        return (f"{k} {self.X.numerator}/{self.X.denominator} "
                f"{self.Y.numerator}/{self.Y.denominator} {self.height}")


@dataclass
class CensusRecord:
    k: int
    H: int
    points: list = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def max_height(self) -> int:
        return max((P.height for P in self.points), default=0)


def presieve(n: int) -> bool:
    """False only when n is certainly not a square."""
    if n < 0:
        return False
    return all(_SQUARES[m][n % m] for m in SIEVE_MODULI)


def _orbit(X: Fraction, Y: Fraction) -> set[FoundPoint]:
    return {FoundPoint(sx * X, sy * Y) for sx in (1, -1) for sy in (1, -1)}


def _search_q(k: int, H: int, qs) -> list[FoundPoint]:
    out = set()
    for q in qs:
        kq = k * q ** 6
        for p in range(0, H + 1):
            if gcd(p, q) != 1:
                continue
            n = p ** 6 + kq
            if not presieve(n):
                continue
            r = isqrt(n)
            if r * r == n:
                out |= _orbit(Fraction(p, q), Fraction(r, q ** 3))
    return sorted(out)


def search_k(k: int, H: int, workers: int = 1) -> list[FoundPoint]:
    """All finite points with height(X) <= H, both signs of X and Y, sorted."""
    if k == 0:
        raise ValueError("k must be nonzero")
    if H < 1:
        raise ValueError("H must be >= 1")
    if workers <= 1:
        return _search_q(k, H, range(1, H + 1))
    strata = [range(i, H + 1, workers) for i in range(1, workers + 1)]
    with ProcessPoolExecutor(workers) as ex:
        parts = ex.map(_search_q, [k] * workers, [H] * workers, strata)
        return sorted(set().union(*parts))


def verify_point(k: int, X, Y) -> bool:
    X, Y = Fraction(X), Fraction(Y)
    return Y * Y == X ** 6 + k


def verify_family(a: int) -> dict:
    """Points with X = 1/a^2, a, a^4/2 on Y^2 = X^6 + a^12/4 + 1.

    Y is computed from the curve, never from a closed formula; a non-square
    raises ValueError.
    """
    if a < 2 or a % 2:
        raise ValueError("a must be even and >= 2")
    k = a ** 12 // 4 + 1
    out = {}
    for X in (Fraction(1, a * a), Fraction(a), Fraction(a ** 4, 2)):
        Y = rational_root(X ** 6 + k, 2)
        if Y is None:
            raise ValueError(f"X = {X} gives a non-square for k = {k}")
        out[X] = sorted(_orbit(X, Y))
    return {"k": k, "orbits": out}


# --- census ------------------------------------------------------------------

def _read_ledger(path: Path, H: int) -> dict[int, CensusRecord]:
    pts: dict[int, list] = {}
    finished = set()
    if not path.exists():
        return {}
    for line in path.read_text().splitlines():
        toks = line.split()
        if len(toks) < 3 or int(toks[2]) != H:
            continue
        if toks[0] == "point":
            pts.setdefault(int(toks[1]), []).append(FoundPoint(Fraction(toks[3]), Fraction(toks[4])))
        elif toks[0] == "done":
            finished.add(int(toks[1]))
    # points of a k without its "done" line come from an interrupted run
    return {k: CensusRecord(k, H, sorted(set(pts.get(k, [])))) for k in finished}


def _append(path: Path, rec: CensusRecord):
    with path.open("a") as fh:
        for P in rec.points:
            fh.write(f"point {rec.k} {rec.H} {P.X} {P.Y}\n")
        fh.write(f"done {rec.k} {rec.H} {rec.count}\n")


def census(k_lo: int, k_hi: int, H: int, ledger=None, workers: int = 1) -> list[CensusRecord]:
    """Search every nonzero k in [k_lo, k_hi]; resumable through ``ledger``.

    The ledger is append-only: ``point k H X Y`` lines followed by one
    ``done k H count`` line per finished k.  Units already done for the
    same H are read back instead of recomputed.
    """
    ks = [k for k in range(k_lo, k_hi + 1) if k != 0]
    path = Path(ledger) if ledger else None
    records = _read_ledger(path, H) if path else {}
    todo = [k for k in ks if k not in records]
    if todo:
        log.info("census: %d of %d values of k to search", len(todo), len(ks))
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = zip(todo, ex.map(_search_q, todo, [H] * len(todo),
                                       [range(1, H + 1)] * len(todo)))
            for k, pts in results:
                records[k] = CensusRecord(k, H, pts)
                if path:
                    _append(path, records[k])
    else:
        for k in todo:
            records[k] = CensusRecord(k, H, search_k(k, H))
            if path:
                _append(path, records[k])
    return [records[k] for k in ks]
