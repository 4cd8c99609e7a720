"""Command-line workbench: ``linnik {c3,solve-k,measure,lambda,verify,c2,table}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional

from .admissibility import FULL_MODULUS, AdmissibilityConfig
from .c3 import CheckpointError, c3_report
from .constants import PRESETS, REFERENCE_TABLE, ConstantSet, c2_partial_sum, preset
from .expsum import ExpSumConfig, delta_enclosure, exceptional_threshold, lambda_for_c, write_profile
from .kthreshold import solve_k
from .verifier import DEFAULT_SIEVE_LIMIT, PrimeTable, sweep

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2
WORKERS_ENV = "LINNIK_WORKERS"


class BudgetExceeded(RuntimeError):
    pass


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _emit(rows: Dict[str, object], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(rows, indent=2, sort_keys=False))
        return
    for key, val in rows.items():
        if isinstance(val, dict):
            if "lower" in val:
                val = f"[{val['lower']}, {val['upper']}]"
            else:
                val = json.dumps(val, sort_keys=False)
        print(f"{key}\t{val}")


def cmd_c3(args) -> int:
    if args.modulus < 1:
        raise ValueError("--modulus must be >= 1")
    adm = AdmissibilityConfig(args.modulus) if args.modulus > 1 else None
    t0 = time.perf_counter()
    res = c3_report(args.dmax, args.k, adm, workers=args.workers, checkpoint=args.checkpoint)
    rows: Dict[str, object] = {
        "D": res.D,
        "K": res.K,
        "modulus": res.modulus,
        "c3_lower_bound": res.bound.report(args.digits),
        "c3_unrestricted": res.unrestricted.report(args.digits),
    }
    if res.worst_class is not None:
        rows["worst_class"] = res.worst_class
    if res.tail is not None:
        rows["tail_bound"] = res.tail.report(args.digits)
    _emit(rows, args.format)
    print(f"wall time {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return EXIT_OK


def _constant_set(args) -> ConstantSet:
    if args.preset:
        return preset(args.preset, full_intervals=args.endpoints == "interval")
    missing = [f for f in ("C3", "lam", "c") if getattr(args, f) is None]
    if missing:
        raise ValueError("without --preset, --C3, --lambda and --c are required")
    extra = {k: getattr(args, k) for k in ("C0", "C1", "C2") if getattr(args, k) is not None}
    return ConstantSet.build(args.C3, args.lam, Fraction(args.c), **extra)


def cmd_solve_k(args) -> int:
    res = solve_k(_constant_set(args))
    rows: Dict[str, object] = {"preset": args.preset or "custom"}
    rows.update(res.report(args.digits))
    _emit(rows, args.format)
    return EXIT_OK


def cmd_measure(args) -> int:
    cfg = ExpSumConfig(args.L, Fraction(args.lam), tolerance=args.tol, max_depth=args.max_depth)
    enc = delta_enclosure(cfg, profile=bool(args.profile))
    rows: Dict[str, object] = {
        "L": args.L,
        "lambda": args.lam,
        "delta_lower": _dec(enc.delta_lo, args.digits, down=True),
        "delta_upper": _dec(enc.delta_hi, args.digits, down=False),
        "delta_exact_bounds": f"{enc.delta_lo}..{enc.delta_hi}",
        "ambiguous_mass": str(enc.ambiguous_mass),
        "intervals": enc.intervals_examined,
        "budget_exceeded": enc.budget_exceeded,
    }
    if args.c is not None:
        thr = exceptional_threshold(args.L, Fraction(args.c))
        rows["threshold"] = thr.report(args.digits)
        rows["certified_below_threshold"] = enc.delta_hi < thr.lo
    if args.profile:
        write_profile(enc, args.profile)
    _emit(rows, args.format)
    if enc.budget_exceeded:
        raise BudgetExceeded("interval budget exhausted before reaching the tolerance")
    return EXIT_OK


def _dec(q: Fraction, digits: int, down: bool) -> str:
    from .interval import CertifiedInterval

    iv = CertifiedInterval.point(q)
    return iv.lower_str(digits) if down else iv.upper_str(digits)


def cmd_lambda(args) -> int:
    lam = lambda_for_c(args.L, Fraction(args.c), Fraction(args.step))
    rows: Dict[str, object] = {"L": args.L, "c": args.c, "step": args.step}
    rows["lambda"] = "none certified below 1" if lam is None else str(lam)
    _emit(rows, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    limit = max(args.to, args.sieve_limit if args.sieve_limit else 0, 4)
    table = PrimeTable(limit)
    res = sweep(args.start, args.to, args.max_powers, workers=args.workers, table=table)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write("n\tr\tp\tq\texponents\n")
            for w in res.witnesses:
                f.write(w.tsv() + "\n")
    rows: Dict[str, object] = {
        "from": args.start,
        "to": args.to,
        "max_powers": args.max_powers,
        "histogram": {str(k): v for k, v in res.histogram.items()},
        "exceptions": len(res.exceptions),
    }
    if res.exceptions:
        rows["first_exceptions"] = res.exceptions[:20]
    _emit(rows, args.format)
    return EXIT_OK


def cmd_c2(args) -> int:
    iv = c2_partial_sum(args.dmax)
    _emit({"d_max": args.dmax, "c2_partial_sum": iv.report(args.digits)}, args.format)
    return EXIT_OK


def cmd_table(args) -> int:
    if args.format == "json":
        print(json.dumps([
            {
                "problem": r.problem,
                "required_c": str(r.required_c),
                "old_lambda": r.old_lambda,
                "new_lambda": r.new_lambda,
                "old_K": r.old_K,
                "new_K": r.new_K,
            }
            for r in REFERENCE_TABLE
        ], indent=2))
        return EXIT_OK
    print("problem\tc\told_lambda\tnew_lambda\told_K\tnew_K")
    for r in REFERENCE_TABLE:
        print(f"{r.problem}\t{r.required_c}\t{r.old_lambda}\t{r.new_lambda}\t{r.old_K}\t{r.new_K}")
    return EXIT_OK


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linnik", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, digits=10):
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--digits", type=int, default=digits)

    p = sub.add_parser("c3", help="certified lower bound for C3")
    p.add_argument("--dmax", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--modulus", type=int, default=1,
                   help="admissibility modulus (1 disables; 15015 desk default; "
                        f"{FULL_MODULUS} full)")
    p.add_argument("--full-modulus", action="store_const", dest="modulus", const=FULL_MODULUS)
    p.add_argument("--workers", type=_positive, default=_default_workers())
    p.add_argument("--checkpoint")
    common(p)
    p.set_defaults(func=cmd_c3)

    p = sub.add_parser("solve-k", help="threshold K from the admissibility inequality")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--endpoints", choices=("interval", "upper"), default="interval",
                   help="C0, C2 as full enclosures or as the published upper endpoints")
    p.add_argument("--C0")
    p.add_argument("--C1")
    p.add_argument("--C2")
    p.add_argument("--C3")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--c")
    common(p, 6)
    p.set_defaults(func=cmd_solve_k)

    p = sub.add_parser("measure", help="enclose the measure where |G_L| > lambda L")
    p.add_argument("--L", type=_positive, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--max-depth", type=int, default=48)
    p.add_argument("--c", help="also compare against exp(-c L)")
    p.add_argument("--profile", help="write classified intervals to this TSV file")
    common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("lambda", help="smallest grid lambda certified for a given c")
    p.add_argument("--L", type=_positive, required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--step", default="1/1000")
    common(p)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("verify", help="sweep even n for representations")
    p.add_argument("--from", dest="start", type=int, default=6)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--max-powers", type=int, default=0)
    p.add_argument("--workers", type=_positive, default=_default_workers())
    p.add_argument("--sieve-limit", type=int, default=None,
                   help=f"defaults to the range end (library default {DEFAULT_SIEVE_LIMIT})")
    p.add_argument("--output", help="TSV of witnesses: n, r, p, q, exponents")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("c2", help="partial sum of the C2 series")
    p.add_argument("--dmax", type=_positive, required=True)
    common(p)
    p.set_defaults(func=cmd_c2)

    p = sub.add_parser("table", help="published reference rows for problems (A)-(J)")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_table)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, CheckpointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
