"""Command-line entry point.

Exit codes: 0 on success, 1 when a verification refutes the claimed
parameters, 2 on usage or input errors (with a JSON error on stderr).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import random
import sys
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import analysis, lrc, regen, tradeoff
from .field import parse_rational, render

CSV_COLUMNS = [
    "m",
    "share_s",
    "gamma",
    "lrc_rate",
    "timeshare_rate",
    "func_capacity_rate",
    "lrc_limit",
    "timeshare_limit",
    "func_limit",
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def cmd_construct(args) -> int:
    plan = lrc.plan_construction(args.n, args.d, args.r, args.delta)
    code = lrc.build_generator(plan, q=args.q, seed=args.seed)
    ok = (
        analysis.verify_construction(code, plan).ok
        and analysis.verify_locality(code).ok
        and analysis.min_distance(code) >= args.d
    )
    if args.out:
        lrc.save_code(code, args.out)
    _dump({**plan.summary(), "q": code.q, "seed": args.seed, "verified": ok})
    return 0 if ok else 1


def cmd_fixture(args) -> int:
    code = lrc.fixture_example()
    if args.out:
        lrc.save_code(code, args.out)
    else:
        _dump(lrc.code_to_dict(code))
    return 0


def _plan_for(code: lrc.LinearCode) -> Optional[lrc.ConstructionPlan]:
    p = code.params
    try:
        plan = lrc.plan_construction(p.N, p.D, p.R, p.Delta)
    except lrc.NoPlanError:
        return None
    if plan.K != p.K or [tuple(g) for g in plan.groups()] != list(code.partition):
        return None
    return plan


def cmd_verify(args) -> int:
    code = analysis.load_code(args.code)
    p = code.params
    report: dict = {"n": p.N, "k": p.K, "r": p.R, "delta": p.Delta, "q": code.q}
    distances = {}
    for method in ("rank_based", "codeword_enum"):
        try:
            distances[method] = analysis.min_distance(code, method)
        except analysis.BudgetExceededError:
            pass
    D = min(distances.values())
    report["distance"] = distances
    report["distance_methods_agree"] = len(set(distances.values())) == 1
    report["declared_distance"] = p.D
    loc = analysis.verify_locality(code, exhaustive=args.exhaustive_locality)
    report["locality"] = {"ok": loc.ok, "failure": loc.failure}
    bound = analysis.singleton_bound(p.N, p.K, p.R, p.Delta)
    report["singleton_bound"] = bound
    report["singleton_bound_holds"] = D <= bound
    plan = _plan_for(code)
    if plan is None:
        report["construction"] = None
        report["prop_optimal"] = None
    else:
        cons = analysis.verify_construction(code, plan)
        report["construction"] = {"ok": cons.ok, "failure": cons.failure, **plan.summary()}
        report["prop_optimal"] = analysis.is_prop_optimal(plan)
        if plan.case_tag == lrc.CASE_II:
            report["prop_optimal_note"] = "lower bound only"
    _dump(report)
    ok = (
        report["distance_methods_agree"]
        and D >= p.D
        and loc.ok
        and report["singleton_bound_holds"]
        and (plan is None or report["construction"]["ok"])
    )
    return 0 if ok else 1


def cmd_regen_map(args) -> int:
    code = analysis.load_code(args.code)
    p = code.params
    params = regen.as_regen_params(p)
    copies = math.factorial(p.N)
    out = {
        "regen": params.as_dict(),
        "symmetrized": {
            "copies": copies,
            "alpha": str(copies),
            "gamma": str(copies * p.R),
            "B": str(copies * p.K),
        },
        "normalized": {"alpha": "1", "gamma": str(p.R), "B": str(p.K)},
        "func_capacity": str(tradeoff.func_capacity(params.k, params.d, params.alpha, params.gamma)),
        "beats_timeshare": tradeoff.beats_timeshare(p.N, p.K, p.D, p.R, p.Delta),
        "timeshare_threshold": str(tradeoff.timeshare_threshold(p.N, p.D, p.R, p.Delta)),
    }
    _dump(out)
    return 0


def cmd_simulate(args) -> int:
    code = analysis.load_code(args.code)
    rng = random.Random(args.seed)
    if args.message is not None:
        message = _int_list(args.message)
    else:
        message = [rng.randrange(code.q) for _ in range(code.k)]
    states = regen.encode(code, message)
    d = regen.repair_degree(code)
    transcripts, ok = [], True
    if args.exhaustive:
        scenarios = [
            (lost, H)
            for lost in range(1, code.n + 1)
            for H in combinations([v for v in range(1, code.n + 1) if v != lost], d)
        ]
    elif args.lost is not None:
        helpers = _int_list(args.helpers) if args.helpers else [v for v in range(1, code.n + 1) if v != args.lost]
        scenarios = [(args.lost, helpers)]
    else:
        scenarios = []
    for lost, H in scenarios:
        try:
            t = regen.repair(code, lost, H, states)
        except regen.RepairError as exc:
            transcripts.append({"lost": lost, "helpers": list(H), "error": str(exc)})
            ok = False
            continue
        exact = t.recovered == states[lost - 1].symbols
        ok = ok and exact and t.total <= code.params.R
        transcripts.append({**t.to_json(), "exact": exact})
    k = code.n - code.params.D + 1
    observed = {s.index: s.symbols[0] for s in states[:k]}
    decoded = regen.reconstruct(code, observed)
    ok = ok and decoded == message
    _dump({"message": message, "transcripts": transcripts, "reconstructed": decoded, "ok": ok})
    return 0 if ok else 1


def cmd_symmetrize(args) -> int:
    code = analysis.load_code(args.code)
    sym = regen.symmetrize(code)
    table = sym.load_table()
    norm = sym.normalized_params()
    balanced = all(row["balanced"] for row in table)
    _dump(
        {
            "copies": sym.copies,
            "params": sym.params().as_dict(),
            "normalized": norm.as_dict(),
            "loads": table,
            "balanced": balanced,
        }
    )
    return 0 if balanced else 1


def _write_rows(rows: Sequence[tradeoff.TradeoffRow], exact: bool) -> None:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(CSV_COLUMNS)

    def fmt(x):
        return "" if x is None else render(x, exact=exact)

    for r in rows:
        w.writerow(
            [
                "" if r.m is None else r.m,
                fmt(r.share_s),
                fmt(r.gamma),
                fmt(r.lrc_rate),
                fmt(r.timeshare_rate),
                fmt(r.func_capacity_rate),
                fmt(r.lrc_limit),
                fmt(r.timeshare_limit),
                fmt(r.func_limit),
            ]
        )


def cmd_tradeoff_curve(args) -> int:
    rows = tradeoff.tradeoff_curve(args.k, args.d, args.alpha, args.steps, n=args.n)
    _write_rows(rows, args.exact)
    return 0


def cmd_asymptotics(args) -> int:
    rows = tradeoff.asymptotic_sequence(args.n, args.k, args.d, args.s, _int_list(args.m_list))
    _write_rows(rows, args.exact)
    for r in rows:
        if not r.precondition_ok:
            sys.stdout.write(f"# m={r.m}: existence condition not met yet\n")
    func_ratio, ts_ratio = tradeoff.cor_ratios(args.n, args.k, args.d, args.s)
    sys.stdout.write(
        f"# func_over_lrc_limit={render(func_ratio, exact=args.exact)}"
        f" timeshare_over_lrc_limit={render(ts_ratio, exact=args.exact)}\n"
    )
    return 0


def cmd_bounds(args) -> int:
    b = tradeoff.lrc_capacity_bounds(args.n, args.k, args.d, args.gamma)
    _dump(b.as_dict())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lrc-regen", description="LRCs as exact regenerating codes")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="plan, build and verify an LRC")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True, help="target minimum distance")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--q", type=int, default=None, help="prime field order (default: search)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("fixture", help="emit the (8,5,2,3,2) reference code over GF(3)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("verify", help="distance, locality and bound checks")
    p.add_argument("code")
    p.add_argument("--exhaustive-locality", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("regen-map", help="regenerating-code parameters of an LRC")
    p.add_argument("code")
    p.set_defaults(func=cmd_regen_map)

    p = sub.add_parser("simulate", help="encode, repair and reconstruct")
    p.add_argument("code")
    p.add_argument("--message", default=None, help="comma-separated message symbols")
    p.add_argument("--random", action="store_true", help="random message (default)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lost", type=int, default=None)
    p.add_argument("--helpers", default=None)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("symmetrize", help="per-helper loads of the n!-copy code")
    p.add_argument("code")
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("tradeoff-curve", help="CSV sweep between MSR and MBR")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="number of nodes (default d + 1)")
    p.add_argument("--alpha", type=_rational, default=Fraction(1))
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--exact", action="store_true")
    p.set_defaults(func=cmd_tradeoff_curve)

    p = sub.add_parser("asymptotics", help="CSV of (n+m, k+m, d+m) sequences")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--s", type=_rational, required=True)
    p.add_argument("--m-list", default="100,1000,10000")
    p.add_argument("--exact", action="store_true")
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("bounds", help="bounds on the LRC file size")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--gamma", type=int, required=True)
    p.set_defaults(func=cmd_bounds)
    return parser


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _error("usage", str(exc), 2)
    except (lrc.ConstructionError, analysis.BudgetExceededError) as exc:
        return _error(type(exc).__name__, str(exc), 1)
    except (ValueError, KeyError, OSError, IndexError) as exc:
        return _error(type(exc).__name__, str(exc), 2)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
