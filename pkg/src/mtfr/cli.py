"""mtfr: cascading failures and minimum total-failure removals in interdependent networks."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import harness
from .cascade import RemovalSet, cascade_trace, impact
from .cycles import DEFAULT_CAP, enumerate_cycles
from .errors import MTFRError
from .fixtures import FIXTURES
from .model import (
    dependency_digraph,
    is_star_mode,
    load_network,
    project_dependency_digraph,
    save_network,
    validate,
)
from .randgen import GenConfig, gen_cycle_sampled, to_bidirectional
from .solvers import Budget, Method, solve

# shorthand for --method exact --variant edge
EDGE_EXACT = "edge-exact"


def _fmt(ids) -> str:
    return "{" + ", ".join(sorted(ids)) + "}"


def _split(text: str | None) -> list[str]:
    return [t.strip() for t in (text or "").split(",") if t.strip()]


def _sizes(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in _split(text)]


def _removal(args) -> RemovalSet:
    if args.edges and args.remove:
        raise MTFRError("give either --remove (nodes) or --edges, not both", code="USAGE")
    if args.edges:
        arcs = []
        for item in _split(args.edges):
            if ">" not in item:
                raise MTFRError(f"edge {item!r} must look like from>to", code="USAGE")
            a, b = item.split(">", 1)
            arcs.append((a.strip(), b.strip()))
        return RemovalSet.edges(arcs)
    return RemovalSet.nodes(_split(args.remove))


def cmd_cascade(args) -> int:
    spec = load_network(args.network)
    removals = _removal(args)
    trace = cascade_trace(spec, removals)
    imp = impact(spec, removals)
    if args.json:
        print(json.dumps({
            "removed": [list(x) if isinstance(x, tuple) else x for x in removals.sorted_items()],
            "variant": removals.variant.value,
            "rounds": [sorted(r) for r in trace.rounds],
            "surviving": sorted(trace.surviving),
            "total_failure": not trace.surviving,
            "impact": {"all": imp.fraction, "power": imp.power, "comm": imp.comm},
        }, indent=2))
        return 0
    if args.trace:
        for k, r in enumerate(trace.rounds, 1):
            print(f"round {k}: {_fmt(r)}")
    print(f"surviving: {_fmt(trace.surviving)}")
    if not args.trace:
        print(f"impact: {imp.fraction:.4f} (power {imp.power:.4f}, comm {imp.comm:.4f})")
    return 0


def cmd_cycles(args) -> int:
    spec = load_network(args.network)
    g = project_dependency_digraph(spec) if is_star_mode(spec) else dependency_digraph(spec)
    cs = enumerate_cycles(g, args.cap)
    print(f"cycles: {len(cs)}{' (truncated)' if cs.truncated else ''}")
    if args.list:
        for c in cs.cycles:
            print(" ".join(c))
    return 0


def cmd_solve(args) -> int:
    spec = load_network(args.network)
    budget = Budget(args.budget_nodes, args.budget_secs)
    method, variant = args.method, args.variant
    if method == EDGE_EXACT:
        method, variant = Method.EXACT_BB.value, "edge"
    report = solve(spec, method, variant, budget)
    items = [f"{x[0]}>{x[1]}" if isinstance(x, tuple) else x for x in report.removal.sorted_items()]
    if args.json:
        print(json.dumps({
            "method": report.method.value,
            "variant": report.removal.variant.value,
            "size": report.size,
            "removal": items,
            "optimal": report.optimal,
            "verified_total_failure": report.verified_total_failure,
            "stats": report.stats,
        }, indent=2))
    else:
        print(f"size: {report.size}")
        print(f"removal: {{{', '.join(items)}}}")
        print(f"optimal: {str(report.optimal).lower()}")
        print(f"verified_total_failure: {str(report.verified_total_failure).lower()}")
        for k, v in sorted(report.stats.items()):
            print(f"{k}: {v:.6f}" if isinstance(v, float) else f"{k}: {v}")
    return 0 if report.verified_total_failure else 1


def cmd_gen(args) -> int:
    spec = gen_cycle_sampled(GenConfig(args.n, args.max_cycle, args.seed))
    if args.mode == "bi":
        spec = to_bidirectional(spec)
    save_network(spec, args.out)
    return 0


def cmd_validate(args) -> int:
    with open(args.network, encoding="utf-8") as fh:
        text = fh.read()
    from .model import from_document

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MTFRError(f"malformed JSON: {exc}", code="SYNTAX") from None
    try:
        spec = from_document(doc)
    except MTFRError as exc:
        if exc.code != "INVARIANT":
            raise
        print(f"invalid: {exc}")
        return 1
    problems = validate(spec)
    print("valid" if not problems else "\n".join(f"{p.code}: {p.message}" for p in problems))
    print(f"star mode: {str(is_star_mode(spec)).lower()}")
    return 0


def cmd_fixture(args) -> int:
    save_network(FIXTURES[args.name](), args.out)
    return 0


def cmd_experiment(args) -> int:
    run = harness.run_heuristic_comparison if args.which == "fig6" else harness.run_model_comparison
    result = run(_sizes(args.sizes), args.trials, args.seed, jobs=args.jobs,
                 budget=Budget(args.budget_nodes, args.budget_secs))
    os.makedirs(args.out_dir, exist_ok=True)
    harness.emit_csv(result, os.path.join(args.out_dir, f"{args.which}.csv"))
    harness.emit_plot(result, os.path.join(args.out_dir, f"{args.which}.svg"))
    for n in result.sizes:
        means = "  ".join(f"{m}={result.mean(n, m):.3f}" for m in result.methods)
        print(f"N={n}: {means}")
    for n, k in sorted(result.excluded_trials.items()):
        print(f"N={n}: {k} trial(s) over budget, excluded from means")
    failures = harness.check_trends(result)
    for f in failures:
        print(f"TREND FAIL {f}", file=sys.stderr)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mtfr", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cascade", help="simulate the cascade after removals")
    c.add_argument("--network", required=True)
    c.add_argument("--remove", default="", help="comma separated relay ids")
    c.add_argument("--edges", default="", help="comma separated dependency arcs a>b")
    c.add_argument("--trace", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_cascade)

    c = sub.add_parser("cycles", help="count elementary dependency cycles")
    c.add_argument("--network", required=True)
    c.add_argument("--cap", type=int, default=DEFAULT_CAP)
    c.add_argument("--list", action="store_true")
    c.set_defaults(func=cmd_cycles)

    c = sub.add_parser("solve", help="compute a total-failure removal set")
    c.add_argument("--network", required=True)
    c.add_argument("--method", choices=[m.value for m in Method] + [EDGE_EXACT], default="exact")
    c.add_argument("--variant", choices=["node", "edge"], default="node")
    c.add_argument("--budget-nodes", type=int, default=Budget.max_branch_nodes)
    c.add_argument("--budget-secs", type=float, default=Budget.max_seconds)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_solve)

    c = sub.add_parser("gen", help="generate a random star instance")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--max-cycle", type=int, default=6)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--mode", choices=["uni", "bi"], default="uni")
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_gen)

    c = sub.add_parser("validate", help="report invariant violations of a topology file")
    c.add_argument("--network", required=True)
    c.set_defaults(func=cmd_validate)

    c = sub.add_parser("fixture", help="write a built-in reference network")
    c.add_argument("name", choices=sorted(FIXTURES))
    c.add_argument("--out", required=True)
    c.set_defaults(func=cmd_fixture)

    c = sub.add_parser("experiment", help="run the fig6 or fig7 comparison")
    c.add_argument("which", choices=["fig6", "fig7"])
    c.add_argument("--sizes", default="4..10")
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out-dir", default=".")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--budget-nodes", type=int, default=Budget.max_branch_nodes)
    c.add_argument("--budget-secs", type=float, default=Budget.max_seconds)
    c.set_defaults(func=cmd_experiment)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MTFRError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error [IO]: {exc}", file=sys.stderr)
        return 2
