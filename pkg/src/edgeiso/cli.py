"""Command line front end.

Graphs are given either as an edge-list file path or as a constructor
expression (complete(4), join(X,Y), power(complete(2),3), ...).  Exit
codes: 0 all requested checks passed or were explicitly evidence-only,
1 a check failed, 2 bad usage or input, 3 capacity exceeded.  The
EDGEISO_THREADS environment variable sets the worker count for big
profile scans; any value produces identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import casebook as casebook_mod
from . import compress as compress_mod
from . import delta as delta_mod
from . import solver as solver_mod
from .errors import CapacityError, InputError, NsRequiredError
from .graphs import load_graph

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


def _emit(args, payload: dict, human: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(human)


def cmd_delta(args) -> int:
    g = load_graph(args.graph)
    prof = solver_mod.iso_profile(g, cap=args.cap)
    search = solver_mod.has_ns(g, prof)
    d = delta_mod.delta_of(prof, ns_order=search.order)
    seg = delta_mod.segments_of(d)
    dense = delta_mod.is_delta_dense(d)
    sym = delta_mod.is_symmetric(d)
    verdict = delta_mod.regularity_crosscheck(g, d)
    payload = d.to_dict()
    payload["regular"] = verdict.regular
    payload["crosscheck_consistent"] = verdict.consistent
    payload["has_ns"] = search.order is not None
    lines = [
        f"graph: {g.display_name()}  (n={g.n}, edges={g.edge_count()})",
        f"delta: {d}",
        f"segments: {seg.count}  starts: {tuple(seg.starts)}",
        f"delta-dense: {dense.ok}   symmetric: {sym.ok}   regular: {verdict.regular}",
        f"nested solutions: {'yes' if search.order is not None else 'no'}",
    ]
    if not search.order:
        lines.append("note: segment structure reported outside the nested-solution setting")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if verdict.consistent else EXIT_CHECK_FAILED


def cmd_solve(args) -> int:
    g = load_graph(args.graph)
    prof = solver_mod.iso_profile(g, cap=args.cap)
    if args.csv:
        print(prof.to_csv(), end="")
        return EXIT_OK
    rows = [f"{m:>4} {prof.induced[m]:>8} {prof.boundary[m]:>9}   "
            f"{hex(prof.induced_witness[m])}" for m in range(g.n + 1)]
    human = (f"graph: {g.display_name()}  (n={g.n}, edges={g.edge_count()})\n"
             + f"{'m':>4} {'induced':>8} {'boundary':>9}   witness\n" + "\n".join(rows))
    _emit(args, prof.to_dict(), human)
    return EXIT_OK


def cmd_ns(args) -> int:
    g = load_graph(args.graph)
    prof = solver_mod.iso_profile(g, cap=args.cap)
    search = solver_mod.has_ns(g, prof)
    payload = {
        "graph": g.display_name(),
        "has_ns": search.order is not None,
        "order": list(search.order) if search.order else None,
        "deepest_optimal_prefix": search.deepest,
    }
    if search.order is not None:
        report = solver_mod.verify_order(g, search.order, prof)
        payload["verified"] = report.ok
        human = (f"{g.display_name()}: nested solutions found\n"
                 f"order: {' '.join(str(v) for v in search.order)}\n"
                 f"every prefix optimal: {report.ok}")
    else:
        human = (f"{g.display_name()}: no nested solutions "
                 f"(deepest optimal prefix: {search.deepest} of {g.n})")
    _emit(args, payload, human)
    return EXIT_OK


def cmd_orders(args) -> int:
    g = load_graph(args.graph)
    orders, total = solver_mod.enumerate_optimal_orders(g, cap=args.cap)
    payload = {
        "graph": g.display_name(),
        "total": total,
        "listed": [list(o.order) for o in orders],
    }
    lines = [f"{g.display_name()}: {total} optimal orders (showing {len(orders)})"]
    lines.extend(" ".join(str(v) for v in o.order) for o in orders)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_uniqueness(args) -> int:
    g = load_graph(args.graph)
    prof = solver_mod.iso_profile(g, cap=args.cap)
    d = delta_mod.delta_of(prof)
    dense = delta_mod.is_delta_dense(d)
    survey = compress_mod.enumerate_compressed_optimal_orders(
        g, cap=args.cap_chains, profile=prof, count_limit=args.count_limit)
    payload = {
        "graph": g.display_name(),
        "delta_dense": dense.ok,
        "total_chains": survey.total,
        "count_exact": survey.exact,
        "classifications": list(survey.classifications),
    }
    if dense.ok:
        unique = (survey.exact and survey.total == 2
                  and sorted(survey.classifications) == ["colex", "lex"])
        payload["exactly_lex_and_colex"] = unique
        human = (f"{g.display_name()} squared: {survey.total} compressed optimal orders; "
                 f"exactly lex and colex: {unique}")
        _emit(args, payload, human)
        return EXIT_OK if unique else EXIT_CHECK_FAILED
    payload["exploratory"] = True
    count_txt = f"{survey.total}" if survey.exact else f">= {survey.total}"
    human = (f"{g.display_name()} is not delta-dense; exploratory listing only\n"
             f"compressed optimal orders: {count_txt}; "
             f"kinds seen: {sorted(set(survey.classifications))}")
    _emit(args, payload, human)
    return EXIT_OK


def cmd_lex2(args) -> int:
    g = load_graph(args.graph)
    report = compress_mod.verify_lex_square(g)
    failures = report.failures()
    human = (f"{report.subject}: "
             + ("optimal at all sizes" if report.ok else
                f"fails at sizes {[r.size for r in failures[:10]]}"))
    if failures:
        worst = failures[0]
        human += (f"\nfirst failure: size {worst.size}, lex {worst.candidate} "
                  f"< optimum {worst.optimum} (witness heights {worst.witness})")
    _emit(args, report.to_dict(), human)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_power_check(args) -> int:
    g = load_graph(args.graph)
    report = compress_mod.power_lex_check(g, args.d, mode=args.mode,
                                          samples=args.samples, seed=args.seed)
    failures = report.failures()
    human = f"{report.subject} ({report.note}): " + ("ok" if report.ok else "FAILED")
    if failures:
        worst = failures[0]
        human += f"\nfirst failure: size {worst.size}, {worst.candidate} vs {worst.optimum}"
    _emit(args, report.to_dict(), human)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_casebook(args) -> int:
    if args.list:
        for claim in casebook_mod.CLAIMS:
            print(f"{claim.id:<24} {claim.statement}")
        return EXIT_OK
    ids = args.claim if args.claim else None
    results = casebook_mod.run_casebook(ids, max_seconds=args.max_seconds)
    payload = {"results": [r.to_dict() for r in results]}
    lines = []
    for r in results:
        lines.append(f"[{r.status:>13}] {r.id:<24} ({r.elapsed:.2f}s)")
        if r.status == "fail":
            lines.append(f"    {json.dumps(r.artifacts)}")
        elif r.status == "skipped":
            lines.append(f"    {r.artifacts.get('reason', '')}")
    failed = [r for r in results if r.status == "fail"]
    lines.append(f"{len(results)} claims: "
                 f"{sum(r.status == 'pass' for r in results)} pass, "
                 f"{sum(r.status == 'evidence-only' for r in results)} evidence-only, "
                 f"{sum(r.status == 'skipped' for r in results)} skipped, "
                 f"{len(failed)} fail")
    _emit(args, payload, "\n".join(lines))
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgeiso",
        description="Exact edge-isoperimetric computations on small graphs.",
        epilog="Set EDGEISO_THREADS to control scan workers (output is identical "
               "for any value).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("delta", cmd_delta, "delta sequence, segments, density, symmetry")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=None, help="override the vertex cap")

    p = add("solve", cmd_solve, "full induced/boundary optimum tables")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--csv", action="store_true", help="CSV profile output")

    p = add("ns", cmd_ns, "search for a nested-solution order")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=None)

    p = add("orders", cmd_orders, "enumerate optimal orders")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=10, help="how many orders to list")

    p = add("uniqueness", cmd_uniqueness, "compressed optimal orders of the square")
    p.add_argument("graph")
    p.add_argument("--cap", type=int, default=None, help="override the vertex cap")
    p.add_argument("--cap-chains", type=int, default=10, dest="cap_chains",
                   help="how many chains to list")
    p.add_argument("--count-limit", type=int, default=10_000, dest="count_limit",
                   help="stop counting chains past this many")

    p = add("lex2", cmd_lex2, "is the lex chain optimal at every size of g squared")
    p.add_argument("graph")

    p = add("power-check", cmd_power_check, "are numeric prefixes optimal in g^d")
    p.add_argument("graph")
    p.add_argument("--d", type=int, required=True, help="power exponent")
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--samples", type=int, default=32)
    p.add_argument("--seed", type=int, default=2024)

    p = add("casebook", cmd_casebook, "re-run the recorded claims")
    p.add_argument("--claim", action="append", help="run only this claim id (repeatable)")
    p.add_argument("--list", action="store_true", help="list claim ids and statements")
    p.add_argument("--max-seconds", type=int, default=120, dest="max_seconds",
                   help="time budget; slow claims outside it are reported as skipped")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NsRequiredError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
