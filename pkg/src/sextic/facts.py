"""Curve facts: ranks and generators ingested as data.

One fact per line::

    curve <c> rank <r> gen <xn/xd,yn/yd> ... source "<text>"

Ranks are trusted annotations carrying their provenance.  Generators are
cheap to check and always are: each must lie on the curve and have
infinite order.  Facts are keyed by the sixth-power-free model.
"""
from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .arith import frac_str, sixth_power_free
from .curves import MordellCurve, Point, order_if_torsion


class FactsParseError(ValueError):
    pass


class FactsValidationError(ValueError):
    pass


@dataclass(frozen=True)
class CurveFact:
    c: int
    rank: int
    generators: tuple = ()
    source: str = ""
    verified: bool = False

    def line(self) -> str:
        gens = " ".join(f"{frac_str(P.x)},{frac_str(P.y)}" for P in self.generators)
        gen_part = f" gen {gens}" if gens else " gen"
        src = self.source.replace('"', "'")
        return f'curve {self.c} rank {self.rank}{gen_part} source "{src}"'


@dataclass
class FactsDB:
    facts: dict = field(default_factory=dict)
    path: str | None = None

    def get(self, c: int, require_verified: bool = True) -> CurveFact | None:
        f = self.facts.get(c)
        if f is None or (require_verified and not f.verified):
            return None
        return f

    def __contains__(self, c):
        return c in self.facts

    def __len__(self):
        return len(self.facts)

    def __eq__(self, other):
        return isinstance(other, FactsDB) and self.facts == other.facts

    def add(self, fact: CurveFact):
        if fact.c in self.facts:
            raise FactsValidationError(f"duplicate fact for c={fact.c}")
        self.facts[fact.c] = fact

    def rank_zero_component(self, k: int) -> str | None:
        """'E1', 'E2' or 'both' for the covers y^2 = x^3 + k, x^3 + k^2."""
        sides = []
        for name, c in (("E1", k), ("E2", k * k)):
            f = self.get(MordellCurve(c).reduced()[0].c)
            if f is not None and f.rank == 0:
                sides.append(name)
        if not sides:
            return None
        return "both" if len(sides) == 2 else sides[0]


def _parse_point(tok: str, where: str) -> Point:
    try:
        xs, ys = tok.split(",")
        return Point(Fraction(xs), Fraction(ys))
    except (ValueError, ZeroDivisionError):
        raise FactsParseError(f"{where}: bad point {tok!r}") from None


def parse_line(line: str, where: str = "<line>") -> CurveFact | None:
    body = line.strip()
    if not body or body.startswith("#"):
        return None
    try:
        toks = shlex.split(body)
    except ValueError as exc:
        raise FactsParseError(f"{where}: {exc}") from None
    if len(toks) < 4 or toks[0] != "curve" or toks[2] != "rank":
        raise FactsParseError(f"{where}: expected 'curve <c> rank <r> ...'")
    try:
        c, r = int(toks[1]), int(toks[3])
    except ValueError:
        raise FactsParseError(f"{where}: curve and rank must be integers") from None
    rest = toks[4:]
    gens, source = [], ""
    if rest and rest[0] == "gen":
        rest = rest[1:]
        while rest and rest[0] != "source":
            gens.append(_parse_point(rest.pop(0), where))
    if rest:
        if rest[0] != "source" or len(rest) != 2:
            raise FactsParseError(f"{where}: trailing tokens {rest}")
        source = rest[1]
    return CurveFact(c, r, tuple(gens), source)


def validate(fact: CurveFact, where: str = "") -> CurveFact:
    tag = f"{where} curve {fact.c}".strip()
    if fact.c == 0 or not sixth_power_free(fact.c):
        raise FactsValidationError(f"{tag}: c must be nonzero and sixth-power-free")
    if fact.rank < 0:
        raise FactsValidationError(f"{tag}: negative rank")
    if fact.rank == 0 and fact.generators:
        raise FactsValidationError(f"{tag}: rank 0 with generators")
    if len(fact.generators) > fact.rank:
        raise FactsValidationError(f"{tag}: more generators than rank")
    E = MordellCurve(fact.c)
    for P in fact.generators:
        if not E.contains(P):
            raise FactsValidationError(f"{tag}: generator {P} is not on the curve")
        if order_if_torsion(E, P) is not None:
            raise FactsValidationError(f"{tag}: generator {P} is torsion")
    ok = fact.rank == 0 or len(fact.generators) == fact.rank
    return CurveFact(fact.c, fact.rank, fact.generators, fact.source, ok)


def loads(text: str, name: str = "<string>") -> FactsDB:
    db = FactsDB(path=name)
    for i, line in enumerate(text.splitlines(), 1):
        where = f"{name}:{i}"
        fact = parse_line(line, where)
        if fact is None:
            continue
        fact = validate(fact, where)
        if fact.c in db:
            raise FactsValidationError(f"{where}: duplicate fact for curve {fact.c}")
        db.add(fact)
    return db


def load(path) -> FactsDB:
    if path in (None, "bundled"):
        return load_bundled()
    p = Path(path)
    return loads(p.read_text(), str(p))


def dumps(db: FactsDB) -> str:
    return "".join(f.line() + "\n" for _, f in sorted(db.facts.items()))


_BUNDLED: FactsDB | None = None


def load_bundled() -> FactsDB:
    global _BUNDLED
    if _BUNDLED is None:
        text = resources.files("sextic").joinpath("data/facts.txt").read_text()
        _BUNDLED = loads(text, "bundled:facts.txt")
    return _BUNDLED
