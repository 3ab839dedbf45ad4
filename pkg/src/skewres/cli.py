"""Command-line interface.

Exit codes: 0 all checks passed, 1 a mathematical check failed,
2 usage error (argparse's convention).
"""

from __future__ import annotations

import argparse
import json
import sys as _sys

from .complexes import (
    betti_table,
    complex_from_json,
    complex_to_json,
    verify_resolution,
)
from .fields import DEFAULT_PRIME, GF, QQ
from .groebner import BudgetExceededError
from .ideals import Ideal, colon
from .pipeline import (
    ConjectureError,
    PipelineError,
    run_direct,
    run_pipeline,
    verify_conjecture,
)
from .ring import LEX, DEGREVLEX
from .skew import SkewSystem


def _field(args):
    if args.field == "q":
        return QQ
    return GF(args.prime)


def _add_common(p, *, field=True, timeout=True):
    if field:
        p.add_argument("--field", choices=("q", "fp"), default="q",
                       help="coefficients: rationals or a prime field")
        p.add_argument("--prime", type=int, default=DEFAULT_PRIME,
                       help="prime for --field fp")
    if timeout:
        p.add_argument("--timeout", type=float, default=600.0,
                       help="soft budget in seconds per basis computation")
    p.add_argument("--json", action="store_true", help="emit JSON reports")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="skewres",
        description="Resolutions and basis computations for the ideals of a "
                    "generic skew-symmetric matrix times a generic column.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generators", help="print the product-entry generators")
    p.add_argument("--n", type=int, required=True)
    _add_common(p, timeout=False)

    p = sub.add_parser("gb", help="reduced basis of a named ideal")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ideal", choices=("I", "L", "C"), default="I",
                   help="I, L, or the conjectured colon ideal C")
    p.add_argument("--order", choices=("lex", "degrevlex"), default="degrevlex")
    _add_common(p)

    p = sub.add_parser("colon", help="compute (I_n : g_nn)")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("pfaffian", help="sub-Pfaffian with one row/column deleted")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delete", type=int, required=True, metavar="I")
    _add_common(p, timeout=False)

    p = sub.add_parser("resolve", help="minimal free resolution of L_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("pipeline", "direct"), default="pipeline")
    p.add_argument("--out", help="write the complex as JSON to this file")
    p.add_argument("--exact", action="store_true",
                   help="verify exactness symbolically, not just by rank sampling")
    p.add_argument("--cache-dir", help="cache directory (or SKEWRES_CACHE_DIR)")
    _add_common(p)

    p = sub.add_parser("verify", help="verify the structure conjectures")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--conjecture", choices=("1", "2", "all"), default="all")
    p.add_argument("--exact", action="store_true",
                   help="(accepted for symmetry; conjecture checks are exact)")
    _add_common(p)

    p = sub.add_parser("betti", help="Betti table of a stored complex")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("--json", action="store_true")

    return ap


def _cmd_generators(args) -> int:
    sys_ = SkewSystem(args.n, _field(args))
    gens = [sys_.generator(k, args.n) for k in range(1, args.n + 1)]
    if args.json:
        print(json.dumps({"n": args.n, "generators": [g.to_text() for g in gens]}))
    else:
        for k, g in enumerate(gens, start=1):
            print(f"g_{k}{args.n} = {g.to_text()}")
    return 0


def _cmd_gb(args) -> int:
    sys_ = SkewSystem(args.n, _field(args))
    named = sys_.named_ideals()
    ideal = {"I": named.I, "L": named.L, "C": named.conjectured_colon()}[args.ideal]
    order = LEX if args.order == "lex" else DEGREVLEX
    import time

    gb = ideal.groebner(order, deadline=time.monotonic() + args.timeout)
    if args.json:
        print(json.dumps({
            "n": args.n, "ideal": args.ideal, "order": args.order,
            "basis": [p.to_text() for p in gb.polys],
        }))
    else:
        for p in gb.polys:
            print(p.to_text())
    return 0


def _cmd_colon(args) -> int:
    import time

    sys_ = SkewSystem(args.n, _field(args))
    named = sys_.named_ideals()
    result = colon(named.I, named.J.gens[0],
                   deadline=time.monotonic() + args.timeout)
    if args.json:
        print(json.dumps({"n": args.n, "colon": result.texts()}))
    else:
        for g in result.gens:
            print(g.to_text())
    return 0


def _cmd_pfaffian(args) -> int:
    sys_ = SkewSystem(args.n, _field(args))
    pf = sys_.pfaffian_minor(args.delete)
    if args.json:
        print(json.dumps({"n": args.n, "delete": args.delete, "pfaffian": pf.to_text()}))
    else:
        print(pf.to_text())
    return 0


def _cmd_resolve(args) -> int:
    field = _field(args)
    runner = run_pipeline if args.mode == "pipeline" else run_direct
    progress = None if args.json else print
    try:
        run = runner(args.n, field, exact=args.exact, budget=args.timeout,
                     seed=0, progress=progress)
    except (ConjectureError, PipelineError, BudgetExceededError) as exc:
        _report_failure(args, exc)
        return 1
    cx = run.complex
    table = betti_table(cx)
    if args.out:
        import os

        tmp = args.out + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(complex_to_json(cx))
        os.replace(tmp, args.out)
    if args.cache_dir:
        from .pipeline import _store_cached, cache_path

        _store_cached(cache_path(args.cache_dir, args.n, field, args.mode), cx, run)
    if args.json:
        print(json.dumps({
            "n": args.n, "mode": args.mode, "field": field.tag,
            "betti": list(cx.betti_numbers()),
            "verified": run.verified,
            "stages": [s.line() for s in run.stages],
        }))
    else:
        print(table.grid())
        print(f"verified: {run.verified}")
    return 0 if run.verified else 1


def _cmd_verify(args) -> int:
    field = _field(args)
    which = [1, 2] if args.conjecture == "all" else [int(args.conjecture)]
    reports = [verify_conjecture(w, args.n, field, budget=args.timeout)
               for w in which]
    if args.json:
        print(json.dumps([r.to_document() for r in reports]))
    else:
        for r in reports:
            print(f"conjecture {r.conjecture} at n={r.n} over {r.field_tag}: "
                  f"{r.verdict} ({r.seconds:.2f}s)")
            for note in r.notes:
                print(f"  note: {note}")
    bad = any(r.verdict not in ("equal", "vacuous") for r in reports)
    return 1 if bad else 0


def _cmd_betti(args) -> int:
    with open(args.infile, "r", encoding="utf-8") as fh:
        cx = complex_from_json(fh.read())
    table = betti_table(cx)
    if args.json:
        print(json.dumps({
            "betti": list(cx.betti_numbers()),
            "graded": {f"{i},{d}": v for (i, d), v in sorted(table.entries.items())},
        }))
    else:
        print(table.grid())
    return 0


def _report_failure(args, exc) -> None:
    if getattr(args, "json", False):
        doc = {"error": str(exc)}
        if isinstance(exc, ConjectureError):
            doc["report"] = exc.report.to_document()
        print(json.dumps(doc))
    else:
        print(f"FAILED: {exc}", file=_sys.stderr)


_COMMANDS = {
    "generators": _cmd_generators,
    "gb": _cmd_gb,
    "colon": _cmd_colon,
    "pfaffian": _cmd_pfaffian,
    "resolve": _cmd_resolve,
    "verify": _cmd_verify,
    "betti": _cmd_betti,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except BudgetExceededError as exc:
        print(f"FAILED: {exc}", file=_sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
