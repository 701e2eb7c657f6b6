"""Command line entry point: ``sextic <command> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .arith import primes_up_to, sixth_power_free
from .congruence import certify_impossible, certify_80_3
from .descent import COVERS, cover_models, generate_S
from .facts import FactsParseError, FactsValidationError, load as load_facts
from .pipeline import SolveConfig, emit_table, load_expected, solve
from .search import census, search_k

RANGE_OPTS = ("--range", "--k-range")


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("empty range")
    return lo, hi


def _glue_ranges(argv):
    # "--range -50..50" would otherwise read -50..50 as an option
    out, it = [], iter(argv)
    for a in it:
        if a in RANGE_OPTS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--facts", default="bundled", help="facts file, or 'bundled'")
    common.add_argument("--json-lines", action="store_true", help="one JSON record per line")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="sextic", description="Rational points on Y^2 = X^6 + k.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve one k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--height", type=int, default=200)
    p.add_argument("--no-prime-search", action="store_true")

    p = sub.add_parser("search", parents=[common], help="height-bounded point search")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("census", parents=[common], help="search a range of k")
    p.add_argument("--k-range", type=_range, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--resume", help="append-only progress ledger")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("table", parents=[common], help="solve a range and compare with the expected table")
    p.add_argument("--range", type=_range, default=(-50, 50))
    p.add_argument("--height", type=int, default=200)
    p.add_argument("--expected", help="expected table file (default: bundled)")

    p = sub.add_parser("verify-facts", parents=[common], help="re-validate a facts file")
    p.add_argument("path", nargs="?", default=None)

    p = sub.add_parser("certify", parents=[common], help="congruence certificates for the descent set of k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--prime", type=int, action="append", default=[])
    p.add_argument("--bound", type=int, default=100, help="prime search bound when no --prime is given")
    p.add_argument("--parity-80-3", action="store_true",
                   help="the parity and mod-19 certificate for 80 y1^6 + 3 y2^6 = x^3")
    return ap


def _check_k(ap, k):
    if k == 0:
        ap.error("--k must be nonzero")
    if not sixth_power_free(k):
        ap.error(f"--k {k} is not sixth-power-free")


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(_glue_ranges(sys.argv[1:] if argv is None else argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        facts = load_facts(args.facts)
    except (OSError, FactsParseError, FactsValidationError) as exc:
        print(f"sextic: cannot load facts: {exc}", file=sys.stderr)
        return 2
    out = sys.stdout

    if args.cmd == "solve":
        _check_k(ap, args.k)
        rep = solve(args.k, SolveConfig(facts=facts, height=args.height,
                                        prime_search=not args.no_prime_search))
        if args.json_lines:
            print(rep.json(), file=out)
        else:
            _print_report(rep, out)
        return 0 if rep.sound else 1

    if args.cmd == "search":
        if args.k == 0:
            ap.error("--k must be nonzero")
        if args.height < 1:
            ap.error("--height must be >= 1")
        for P in search_k(args.k, args.height, workers=args.workers):
            print(json.dumps({"k": args.k, "X": str(P.X), "Y": str(P.Y), "height": P.height})
                  if args.json_lines else P.line(args.k), file=out)
        return 0

    if args.cmd == "census":
        lo, hi = args.k_range
        for rec in census(lo, hi, args.height, ledger=args.resume, workers=args.workers):
            if args.json_lines:
                print(json.dumps({"k": rec.k, "count": rec.count, "max_height": rec.max_height,
                                  "points": [[str(P.X), str(P.Y)] for P in rec.points]}), file=out)
            else:
                for P in rec.points:
                    print(P.line(rec.k), file=out)
        return 0

    if args.cmd == "table":
        lo, hi = args.range
        cfg = SolveConfig(facts=facts, height=args.height)
        reports = [solve(k, cfg) for k in range(lo, hi + 1) if k != 0 and sixth_power_free(k)]
        text, cmp = emit_table(reports, load_expected(args.expected))
        if args.json_lines:
            for row in cmp.rows:
                print(json.dumps(row, sort_keys=True), file=out)
        else:
            print(text, file=out)
            print(f"{len(cmp.mismatches)} mismatches in {len(reports)} rows", file=out)
        return 0 if cmp.ok else 1

    if args.cmd == "verify-facts":
        try:
            db = load_facts(args.path) if args.path else facts
        except (OSError, FactsParseError, FactsValidationError) as exc:
            print(f"sextic: {exc}", file=sys.stderr)
            return 1
        unverified = [f.c for f in db.facts.values() if not f.verified]
        print(f"{len(db)} facts loaded, {len(db) - len(unverified)} verified", file=out)
        for c in unverified:
            print(f"unverified: curve {c}", file=out)
        return 0 if not unverified else 1

    if args.cmd == "certify":
        _check_k(ap, args.k)
        if args.parity_80_3:
            if args.k != -15:
                ap.error("--parity-80-3 belongs to k = -15")
            cert = certify_80_3(facts)
            print(cert.digest(), file=out)
            for t in cert.trace:
                print("  " + t, file=out)
            return 0
        primes = args.prime or [p for p in primes_up_to(args.bound) if p > 3]
        any_cert = False
        for eq in generate_S(args.k):
            for side in COVERS[:2]:
                fact = facts.get(cover_models(eq, side)[1].c)
                if fact is None or fact.rank == 0:
                    continue
                ok = [p for p in primes if certify_impossible(eq, fact, p) is not None]
                any_cert |= bool(ok)
                rec = {"eq": str(eq), "side": side, "curve": fact.c, "primes": ok}
                print(json.dumps(rec) if args.json_lines else
                      f"{eq}  {side} (c={fact.c}): {ok or 'no certifying prime'}", file=out)
        return 0 if any_cert else 1
    return 2


def _print_report(rep, out):
    print(f"k = {rep.k}: {rep.status}", file=out)
    pos = sorted({(abs(P.X), abs(P.Y)) for P in rep.points})
    print("points: " + (", ".join(f"+-({x}, {y})" for x, y in pos) or "none"), file=out)
    for c in rep.certificates:
        print(f"  {c.digest()}", file=out)
    for e in rep.residual:
        print(f"  residual {e}", file=out)
    for n in rep.notes:
        print(f"  note: {n}", file=out)


if __name__ == "__main__":
    sys.exit(main())
