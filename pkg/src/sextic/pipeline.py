"""Per-k solver: rank-0 pullback, descent, sieves, certificates, report.

Statuses, strongest first:

* SolvedZeroRank: E1 or E2 has rank 0 and its torsion pulls back.
* SolvedElementary: every descent equation dies by congruences, rank-0
  covers, or the elementary sieve.
* SolvedCongruence: as above, with at least one generator-congruence
  certificate.
* ReducedChabautyNeeded: residual equations remain and the k belongs to
  the set known to be closed by elliptic Chabauty, which is not run here.
* Unresolved: anything else.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .arith import is_rational_square, primes_up_to, sixth_power_free
from .congruence import CERT_SIDES, certify_by_parity, certify_impossible
from .curves import MordellCurve, torsion_points
from .descent import (
    EliminationCertificate, cover_models, eliminate_by_rank0, generate_S,
    local_certificate,
)
from .facts import FactsDB, load as load_facts
from .search import FoundPoint, search_k
from .sieve import sieve_221, sieve_target

log = logging.getLogger(__name__)

STATUSES = ("SolvedZeroRank", "SolvedElementary", "SolvedCongruence",
            "ReducedChabautyNeeded", "Unresolved")
SOLVED = STATUSES[:3]
CHABAUTY_K = frozenset({-28, 3, 10, 17, 24, 35, 48, 15, 43, -11, -15})


@dataclass
class SolveConfig:
    facts: FactsDB | None = None
    height: int = 200
    prime_search: bool = True
    prime_bound: int = 100
    primes: tuple = ()
    parity_n_max: int = 200
    workers: int = 1

    def db(self) -> FactsDB:
        if self.facts is None:
            self.facts = load_facts("bundled")
        return self.facts


@dataclass
class SolveReport:
    k: int
    status: str
    points: list
    search_points: list
    certificates: list = field(default_factory=list)
    residual: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def sound(self) -> bool:
        """A solved report must list every point the search found."""
        if self.status not in SOLVED:
            return True
        return set(self.search_points) <= set(self.points)

    def record(self) -> dict:
        return {
            "k": self.k,
            "status": self.status,
            "points": [_pt(P) for P in self.points],
            "search": [_pt(P) for P in self.search_points],
            "certificates": [c.digest() for c in self.certificates],
            "residual": [str(e) for e in self.residual],
            "sound": self.sound,
        }

    def json(self) -> str:
        return json.dumps(self.record(), sort_keys=True)


def _pt(P: FoundPoint):
    return [str(P.X), str(P.Y)]


def orbit(X, Y) -> set[FoundPoint]:
    X, Y = Fraction(X), Fraction(Y)
    return {FoundPoint(sx * X, sy * Y) for sx in (1, -1) for sy in (1, -1)}


def zero_rank_points(k: int, side: str) -> list[FoundPoint]:
    """Finite points of Y^2 = X^6 + k from torsion on the rank-0 side.

    E1 is y^2 = x^3 + k via (X^2, Y); E2 is y^2 = x^3 + k^2 via
    (k/X^2, kY/X^3), whose point at infinity is X = 0.
    """
    pts: set[FoundPoint] = set()
    if side == "E1":
        for T in torsion_points(MordellCurve(k)):
            if T.is_inf:
                continue
            X = is_rational_square(T.x)
            if X is not None:
                pts |= orbit(X, T.y)
    else:
        for T in torsion_points(MordellCurve(k * k)):
            if T.is_inf:
                Y = is_rational_square(Fraction(k))
                if Y is not None:
                    pts |= orbit(0, Y)
                continue
            if T.x == 0:
                continue  # points at infinity of the sextic
            X = is_rational_square(k / T.x)
            if X is not None:
                pts |= orbit(X, T.y * X ** 3 / k)
    return sorted(pts)


class _SieveCache(dict):
    def get_result(self, D, facts):
        if D not in self:
            self[D] = sieve_221(D, facts)
        return self[D]


def _congruence(eq, facts, cfg: SolveConfig):
    """Plain generator congruences first, then the parity variant."""
    primes = list(cfg.primes)
    if cfg.prime_search:
        primes += [p for p in primes_up_to(cfg.prime_bound) if p > 3 and p not in primes]
    sides = []
    for side in CERT_SIDES:
        fact = facts.get(cover_models(eq, side)[1].c)
        if fact is not None and fact.rank > 0:
            sides.append(fact)
    for certify in (_plain, _parity):
        for fact in sides:
            for p in primes:
                cert = certify(eq, fact, p, cfg)
                if cert is not None:
                    return cert
    return None


def _plain(eq, fact, p, cfg):
    return certify_impossible(eq, fact, p)


def _parity(eq, fact, p, cfg):
    return certify_by_parity(eq, fact, p, n_max=cfg.parity_n_max)


def settle(eq, facts, cfg: SolveConfig, sieves: _SieveCache):
    """First certificate that settles eq, or None."""
    cert = local_certificate(eq)
    if cert is not None:
        return cert
    cert = eliminate_by_rank0(eq, facts)
    if cert is not None:
        return cert
    tgt = sieve_target(eq)
    if tgt is not None:
        res = sieves.get_result(tgt[0], facts)
        if res.complete:
            return EliminationCertificate("Sieve221", eq, {"D": tgt[0], "tau": res.tau, "nu": res.nu,
                                                           "pairs": len(res.eliminated)})
    return _congruence(eq, facts, cfg)


def solve(k: int, config: SolveConfig | None = None) -> SolveReport:
    if k == 0 or not sixth_power_free(k):
        raise ValueError(f"k={k} must be nonzero and sixth-power-free")
    cfg = config or SolveConfig()
    facts = cfg.db()
    found = search_k(k, cfg.height, workers=cfg.workers)
    side = facts.rank_zero_component(k)
    if side is not None:
        use = "E1" if side in ("E1", "both") else "E2"
        pts = zero_rank_points(k, use)
        fact = facts.get(MordellCurve(k if use == "E1" else k * k).reduced()[0].c)
        cert = EliminationCertificate("ZeroRank" + use, None, {"curve": fact.c, "source": fact.source})
        return SolveReport(k, "SolvedZeroRank", pts, found, [cert])
    certs, residual, pts = [], [], set()
    sieves = _SieveCache()
    for eq in generate_S(k):
        cert = settle(eq, facts, cfg, sieves)
        if cert is None:
            residual.append(eq)
            continue
        certs.append(cert)
        for sol in getattr(cert, "solutions", []):
            pts |= orbit(*eq.to_curve_point(*sol))
    if residual:
        status = "ReducedChabautyNeeded" if k in CHABAUTY_K else "Unresolved"
        points = found
    else:
        status = "SolvedCongruence" if any(c.method.endswith("Congruence") for c in certs) \
            else "SolvedElementary"
        points = sorted(pts)
    rep = SolveReport(k, status, points, found, certs, residual)
    if not rep.sound:
        rep.notes.append("soundness violation: search found points outside the proven set")
        log.error("k=%d: %s", k, rep.notes[-1])
    return rep


# --- expected table ----------------------------------------------------------

@dataclass(frozen=True)
class ExpectedRow:
    k: int
    status: str
    ref: str
    proven: bool
    points: frozenset


def parse_expected(text: str) -> dict[int, ExpectedRow]:
    rows = {}
    for i, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        t = line.split()
        try:
            if t[0] != "row" or t[2] != "status" or t[4] != "ref" or t[6] != "proven" or t[8] != "points":
                raise ValueError
            k = int(t[1])
            pts = set()
            for tok in t[9:]:
                x, y = tok.split(",")
                pts |= orbit(Fraction(x), Fraction(y))
        except (ValueError, IndexError):
            raise ValueError(f"expected table line {i}: malformed row") from None
        if t[3] not in STATUSES:
            raise ValueError(f"expected table line {i}: unknown status {t[3]}")
        rows[k] = ExpectedRow(k, t[3], t[5], t[7] == "yes", frozenset(pts))
    return rows


def load_expected(path=None) -> dict[int, ExpectedRow]:
    if path is None:
        text = resources.files("sextic").joinpath("data/expected_table.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return parse_expected(text)


@dataclass
class TableComparison:
    rows: list
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches


def emit_table(reports: list[SolveReport], expected: dict | None = None) -> tuple[str, TableComparison]:
    """Render reports and compare them with the expected rows."""
    expected = load_expected() if expected is None else expected
    lines, rows, mism = [], [], []
    for rep in sorted(reports, key=lambda r: r.k):
        pos = sorted({(abs(P.X), abs(P.Y)) for P in rep.points})
        shown = ", ".join(f"({x}, {y})" for x, y in pos) or "-"
        exp = expected.get(rep.k)
        flags = []
        if exp is None:
            flags.append("no expected row")
        else:
            if set(rep.points) != set(exp.points):
                flags.append("points")
            if rep.status != exp.status:
                flags.append(f"status (expected {exp.status})")
        if not rep.sound:
            flags.append("soundness")
        row = {"k": rep.k, "status": rep.status, "points": [_pt(P) for P in rep.points],
               "expected_status": exp.status if exp else None, "mismatch": flags}
        rows.append(row)
        if flags:
            mism.append(row)
        mark = "ok" if not flags else "MISMATCH " + "; ".join(flags)
        lines.append(f"{rep.k:>4}  {rep.status:<22} {shown}  [{mark}]")
    return "\n".join(lines), TableComparison(rows, mism)
