"""Command-line front end.

Subcommands: count, constants, sample, enumerate, clmass, groups, verify.
stdout carries machine-readable JSON/CSV only (counts as decimal strings so
no consumer loses precision to native number types); progress and
diagnostics go to stderr.  Any command with fixed flags and seed produces
byte-identical output across runs.

Exit codes: 0 success, 1 verification failure, 2 resource/cap exceeded,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import constants, counting, groups, lattice
from .arith import default_sieve_limit, shared_sieve
from .errbound import ErrBoundedReal, format_errbounded
from .errors import CapExceededError, PrecisionError
from .verifysuite import SUITES, CheckFailure, run_suite

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CAP = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(doc) -> None:
    print(json.dumps(doc))


# ---------------------------------------------------------------------------
# count
# ---------------------------------------------------------------------------


def cmd_count(args) -> int:
    n, V = args.n, args.V
    if V < 1:
        raise ValueError("--V must be >= 1")
    if args.mode in ("cyclic", "squarefree") and n < 2:
        raise ValueError(f"--mode {args.mode} requires --n >= 2")
    if args.mode == "rank" and args.rank is None:
        raise ValueError("--mode rank requires --rank")
    if args.mode == "rank" and args.method == "formula":
        raise ValueError("--mode rank has no closed form; use --method bruteforce or both")
    shared_sieve(max(2, min(V, default_sieve_limit())))
    workers = args.threads

    if args.mode == "rank":
        count = counting.count_by_rank_bruteforce(n, args.rank, V, args.enum_cap)
        doc = {
            "n": n, "V": V, "mode": "rank", "rank": args.rank,
            "method": args.method, "count": str(count),
        }
        if args.method == "both":
            via_groups = 0
            for G in groups.enumerate_groups(V):
                if G.rank == args.rank:
                    via_groups += groups.primitive_class_count(G, n)
            doc["oracle_count"] = str(via_groups)
            if via_groups != count:
                doc["mismatch"] = True
                _emit(doc)
                print(
                    f"mismatch: enumeration {count} vs group census {via_groups}",
                    file=sys.stderr,
                )
                return EXIT_VERIFY
        _emit(doc)
        return EXIT_OK

    count_fn = {
        "cyclic": counting.count_cocyclic,
        "squarefree": counting.count_squarefree,
        "all": counting.total_count,
    }[args.mode]
    oracle_fn = {
        "cyclic": counting.census_cocyclic_bruteforce,
        "squarefree": counting.census_squarefree_bruteforce,
        "all": counting.census_total_bruteforce,
    }[args.mode]
    pred_fn = {
        "cyclic": counting.cocyclic_leading_term,
        "squarefree": counting.squarefree_leading_term,
        "all": counting.total_leading_term,
    }[args.mode]

    if args.format == "csv":
        return _count_csv(args, count_fn, pred_fn, workers)

    doc = {"n": n, "V": V, "mode": args.mode, "method": args.method}
    count = (
        count_fn(n, V, workers)
        if args.method != "bruteforce"
        else oracle_fn(n, V, args.enum_cap)
    )
    doc["count"] = str(count)
    if args.method == "both":
        oracle = oracle_fn(n, V, args.enum_cap)
        doc["oracle_count"] = str(oracle)
        if oracle != count:
            doc["mismatch"] = True
            _emit(doc)
            print(f"mismatch: formula {count} vs oracle {oracle}", file=sys.stderr)
            return EXIT_VERIFY
    if n >= 2:
        pred = pred_fn(n, V, args.tol)
        doc["prediction"] = format_errbounded(pred)
        doc["prediction_kind"] = "leading-order"
        doc["ratio"] = format_errbounded(ErrBoundedReal.exact(count) / pred)
    _emit(doc)
    return EXIT_OK


def _count_csv(args, count_fn, pred_fn, workers) -> int:
    n, V = args.n, args.V
    steps = args.ladder if args.ladder else 1
    rows = []
    const_pred = pred_fn(n, 1, args.tol) if n >= 2 else None  # per V^n scaling below
    for i in range(1, steps + 1):
        Vi = V * i // steps
        if Vi < 1:
            continue
        count = count_fn(n, Vi, workers)
        if const_pred is not None:
            pred = const_pred * ErrBoundedReal.exact(Vi**n)
            rows.append((Vi, count, float(pred.value), count / float(pred.value)))
        else:
            rows.append((Vi, count, float("nan"), float("nan")))
    print("V,count,prediction,ratio")
    for Vi, count, pred, ratio in rows:
        print(f"{Vi},{count},{pred:.12g},{ratio:.12g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


def cmd_constants(args) -> int:
    name = args.name.replace("_", "-")
    try:
        value, cutoff = constants.evaluate_constant(
            name, k=args.k, n=args.n, m=args.m, r=args.r, p=args.p, tol=args.tol
        )
    except KeyError:
        raise ValueError(
            f"unknown constant {args.name!r}; known: {', '.join(constants.CONSTANT_NAMES)}"
        ) from None
    doc = {"name": name}
    doc.update(format_errbounded(value))
    doc["prime_cutoff"] = cutoff
    _emit(doc)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sample / enumerate
# ---------------------------------------------------------------------------


def cmd_sample(args) -> int:
    if args.n < 1 or args.q < 1 or args.count < 1:
        raise ValueError("need --n >= 1, --q >= 1, --count >= 1")
    seed = args.seed
    if seed is None:
        seed = int.from_bytes(os.urandom(8), "big")
        print(f"seed: {seed}", file=sys.stderr)
    for basis in lattice.sample_cocyclic_stream(args.n, args.q, args.count, seed):
        print(basis.to_json())
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.n < 1 or args.q < 1:
        raise ValueError("need --n >= 1 and --q >= 1")
    if args.count_only:
        _emit({"n": args.n, "q": args.q, "count": str(lattice.count_sublattices(args.n, args.q))})
        return EXIT_OK
    for basis in lattice.enumerate_sublattices(args.n, args.q, args.cap):
        print(basis.to_json())
    return EXIT_OK


# ---------------------------------------------------------------------------
# clmass / groups
# ---------------------------------------------------------------------------


def _mass_doc(mass) -> dict:
    if isinstance(mass, Fraction):
        return {
            "value": f"{mass.numerator / mass.denominator:.17g}",
            "err": "0",
            "exact": True,
            "fraction": f"{mass.numerator}/{mass.denominator}",
        }
    doc = format_errbounded(mass)
    doc["exact"] = False
    return doc


def cmd_clmass(args) -> int:
    if args.V < 1:
        raise ValueError("--V must be >= 1")
    doc = {"V": args.V, "total_mass": _mass_doc(groups.cl_total_mass(args.V))}
    if args.predicate:
        mass = groups.cl_predicate_mass(args.V, args.predicate, args.r)
        doc["predicate"] = args.predicate
        if args.predicate == "rank-at-most":
            doc["r"] = args.r
        doc["predicate_mass"] = _mass_doc(mass)
    _emit(doc)
    return EXIT_OK


def cmd_groups(args) -> int:
    if args.V < 1:
        raise ValueError("--V must be >= 1")
    if args.dump:
        print("order,decomposition,aut_order,rank")
        for G in groups.enumerate_groups(args.V):
            print(f"{G.order},{G.describe()},{groups.aut_order(G)},{G.rank}")
        return EXIT_OK
    classes = groups.count_isomorphism_classes(args.V)
    doc = {
        "V": args.V,
        "classes": str(classes),
        "cyclic_classes": str(args.V),
        "cyclic_fraction": f"{args.V / classes:.12g}",
    }
    _emit(doc)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    def progress(check_id: str) -> None:
        print(f"running {check_id}", file=sys.stderr)

    try:
        executed = run_suite(args.suite, report=progress)
    except CheckFailure as exc:
        message = str(exc)
        failed_id = message.split(":", 1)[0]
        _emit({"ok": False, "failed": failed_id, "message": message})
        return EXIT_VERIFY
    _emit({"ok": True, "suite": args.suite, "passed": executed})
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="latcensus", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="census counts with predictions and oracles")
    p.add_argument("--n", type=int, required=True, help="lattice dimension")
    p.add_argument("--V", type=int, required=True, help="index bound")
    p.add_argument("--mode", choices=("cyclic", "squarefree", "all", "rank"), default="cyclic")
    p.add_argument("--rank", type=int, help="quotient rank for --mode rank")
    p.add_argument("--method", choices=("formula", "bruteforce", "both"), default="formula")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--ladder", type=int, help="emit a CSV ladder with this many rungs")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--threads", type=int, default=os.cpu_count())
    p.add_argument("--enum-cap", type=int, default=counting.DEFAULT_ENUM_CAP)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("constants", help="error-bounded named constants")
    p.add_argument("--name", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--tol", type=float, default=constants.DEFAULT_TOL)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("sample", help="uniform co-cyclic lattice draws (JSON lines)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("enumerate", help="all sublattices of one index (JSON lines)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--cap", type=int, default=counting.DEFAULT_ENUM_CAP)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("clmass", help="census masses (weight 1/#Aut)")
    p.add_argument("--V", type=int, required=True)
    p.add_argument("--predicate", choices=("cyclic", "squarefree-order", "rank-at-most"))
    p.add_argument("--r", type=int, help="rank bound for --predicate rank-at-most")
    p.set_defaults(func=cmd_clmass)

    p = sub.add_parser("groups", help="abelian group census")
    p.add_argument("--V", type=int, required=True)
    p.add_argument("--dump", action="store_true", help="CSV census dump")
    p.set_defaults(func=cmd_groups)

    p = sub.add_parser("verify", help="run cross-module invariant suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CapExceededError, PrecisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
