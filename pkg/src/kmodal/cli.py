"""Command line entry point: ``kmodal <subcommand> ...``.

Every subcommand writes deterministic output; randomized suites are seeded
from ``--seed`` or, failing that, the ``KMODAL_SEED`` environment variable
(default :data:`kmodal.rng.DEFAULT_SEED`).
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import sys

from . import suites
from .bounds import lb_rho, reference_bounds, ub_threshold
from .construct import ThresholdError, build_ust, choose_params, extremal_set
from .core import NonGenericError
from .cover import fine_cover
from .io import (covering_to_json, dump_json, path_to_json, points_csv, read_point_input,
                 write_points_csv)
from .rng import RNG_ALGORITHM, TrialRng, default_seed
from .solver import RHO_GUARD, longest_modal, rho_exact, rho_sample


class UsageError(ValueError):
    """Invalid parameter combination for a subcommand."""


def _print_json(obj, out) -> None:
    out.write(dump_json(obj) + "\n")


def _seed(args) -> int:
    return args.seed if args.seed is not None else default_seed()


def _int_list(text: str) -> list[int]:
    """'3', '1,4,9' or '1-8' (inclusive)."""
    vals = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            vals.extend(range(int(lo), int(hi) + 1))
        elif part:
            vals.append(int(part))
    return vals


def cmd_solve(args, out) -> int:
    S = read_point_input(args.input)
    sol = longest_modal(S, args.k, args.sign)
    record = {"n": len(S), "k": args.k, "sign": sol.witness.sign.value if sol.length else None,
              "length": sol.length, "requested": args.sign}
    if args.witness:
        dump_json(path_to_json(sol.witness), args.witness)
        record["witness_file"] = args.witness
    else:
        record["witness"] = path_to_json(sol.witness)
    _print_json(record, out)
    return 0


def cmd_rho(args, out) -> int:
    if args.sample is not None:
        rng = TrialRng(_seed(args))
        r = rho_sample(args.n, args.k, args.sample, rng)
        _print_json({"n": r.n, "k": r.k, "rho_upper_bound": r.value, "exact": False,
                     "trials": args.sample, "seed": rng.seed, "rng": RNG_ALGORITHM,
                     "witness": list(r.witness_permutation)}, out)
        return 0
    ns = range(1, args.n + 1) if args.table else [args.n]
    for n in ns:
        r = rho_exact(n, args.k, workers=args.workers)
        _print_json({"n": n, "k": args.k, "rho": r.value, "exact": True,
                     "lb_rho": lb_rho(n, args.k), "witness": list(r.witness_permutation)}, out)
    return 0


def cmd_construct(args, out) -> int:
    params = choose_params(args.n, args.k)
    S = extremal_set(args.n, args.k)
    if args.out:
        write_points_csv(S, args.out)
    _print_json({"n": args.n, "k": args.k, "s": params.s, "t": params.t,
                 "t_adjusted": params.adjusted, "ust_size": params.size, "out": args.out}, out)
    if not args.out:
        out.write(points_csv(S))
    return 0


def cmd_construct_ust(args, out) -> int:
    U = build_ust(args.s, args.t).points
    if args.out:
        write_points_csv(U, args.out)
        _print_json({"s": args.s, "t": args.t, "size": len(U), "out": args.out}, out)
    else:
        out.write(points_csv(U))
    return 0


def cmd_cover(args, out) -> int:
    S = read_point_input(args.input)
    C = fine_cover(S, args.k, args.sign)
    obj = covering_to_json(C)
    if args.out:
        dump_json(obj, args.out)
        _print_json({"n": len(S), "k": args.k, "sign": C.sign.value, "size": len(C),
                     "out": args.out}, out)
    else:
        _print_json(obj, out)
    return 0


def _suite_kwargs(args) -> dict:
    name, seed = args.suite, _seed(args)
    n, k, trials = args.max_n, args.k, args.trials
    if name == "thm11":
        return {"max_n": n if n is not None else 8, "ks": (k,) if k is not None else (1, 2, 3)}
    if name == "thm12":
        ks = (k,) if k is not None else (1, 2, 3)
        if n is not None:
            if k is None:
                raise UsageError("thm12 with --n also needs --k")
            return {"grid": [(n, k)]}
        return {"grid": suites.thm12_grid(ks)}
    if name == "ust":
        return {"max_s": args.max_s, "max_t": args.max_t, "max_k": k if k is not None else 4}
    kw = {"seed": seed}
    if trials is not None:
        kw["trials"] = trials
    if n is not None:
        kw["max_n"] = n
    if name == "dilworth":
        if k not in (None, 0):
            raise UsageError("dilworth has no k parameter")
        return kw
    if k is not None:
        kw["k"] = k
        kw["max_k"] = k
    if name == "coverlab":
        kw["emit"] = True
    return kw


def cmd_verify(args, out) -> int:
    kwargs = _suite_kwargs(args)
    res = suites.SUITES[args.suite](**kwargs)
    if args.out:
        with open(args.out, "w") as fh:
            for rec in res.records:
                fh.write(dump_json(rec) + "\n")
    elif args.suite == "coverlab":
        for rec in res.records:
            _print_json(rec, out)
    summary = res.summary()
    summary["rng"] = RNG_ALGORITHM
    _print_json(summary, out)
    return 0 if res.passed else 1


REPORT_COLUMNS = ("n", "k", "lb", "ub", "chung", "gong", "observed", "kind")
REPORT_EXACT_GUARD = 8


def report_rows(ns, ks, exact_guard: int = REPORT_EXACT_GUARD) -> list[dict]:
    """lb/ub and reference bounds, with exact rho for small n or the construction optimum."""
    rows = []
    for k in ks:
        for n in ns:
            row = reference_bounds(n, k).as_row()
            if n <= exact_guard:
                row["observed"], row["kind"] = rho_exact(n, k).value, "exact_rho"
            elif k >= 1 and n >= ub_threshold(k):
                row["observed"] = longest_modal(extremal_set(n, k), k).length
                row["kind"] = "construction_optimum"
            else:
                row["observed"], row["kind"] = "", "bounds_only"
            rows.append(row)
    return rows


def format_rows(rows, fmt: str) -> str:
    if fmt == "md":
        lines = ["| " + " | ".join(REPORT_COLUMNS) + " |",
                 "|" + "---|" * len(REPORT_COLUMNS)]
        lines += ["| " + " | ".join(str(r[c]) for c in REPORT_COLUMNS) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def cmd_report(args, out) -> int:
    text = format_rows(report_rows(_int_list(args.n), _int_list(args.k), args.exact_guard),
                       args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kmodal", description="k-modal paths, coverings and bounds")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="longest k-modal path of a point set")
    p.add_argument("--input", required=True, help="points CSV (x,y) or one value per line")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sign", default="best", choices=["+", "-", "best"])
    p.add_argument("--witness", help="write the witness path JSON here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("rho", help="exact rho(n;k) by exhaustive search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--table", action="store_true", help="all n' = 1..n")
    p.add_argument("--sample", type=int, metavar="T",
                   help="random search over T permutations; an upper bound on rho only")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("construct", help="n-point set with short k-modal paths (n >= 10k^3)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("construct-ust", help="the block set U^{s,t}")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct_ust)

    p = sub.add_parser("cover", help="fine covering from the unfolding")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sign", required=True, choices=["+", "-"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify", help="run a seeded verification suite")
    p.add_argument("--suite", required=True, choices=sorted(suites.SUITES))
    p.add_argument("--n", "--max-n", dest="max_n", type=int,
                   help="largest n (thm12: the single n to test)")
    p.add_argument("--k", type=int, help="fix k (ust: largest k)")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-s", type=int, default=6)
    p.add_argument("--max-t", type=int, default=6)
    p.add_argument("--out", help="write per-trial records as JSON lines")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="bounds table as CSV or markdown")
    p.add_argument("--n", default="1-10", help="e.g. 9, 1-10 or 10,27,80")
    p.add_argument("--k", default="0-3")
    p.add_argument("--format", choices=["csv", "md"], default="csv")
    p.add_argument("--exact-guard", type=int, default=REPORT_EXACT_GUARD,
                   help=f"compute exact rho for n up to this (at most {RHO_GUARD})")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)
    return ap


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "exact_guard", 0) > RHO_GUARD:
        args.exact_guard = RHO_GUARD
    try:
        return args.func(args, out)
    except (UsageError, ThresholdError, NonGenericError, ValueError, OSError) as exc:
        _print_json({"error": type(exc).__name__, "message": str(exc),
                     "command": args.command}, out)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
