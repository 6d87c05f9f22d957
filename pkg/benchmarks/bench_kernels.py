"""Compare the compiled and pure-Python kernel backends on random instances.

Usage: python3 benchmarks/bench_kernels.py [--n 10] [--instances 20] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time
from types import ModuleType
from typing import Callable

from mtfr import _kernels_py
from mtfr.kernels import IndexedDigraph, min_hitting_set
from mtfr.model import project_dependency_digraph
from mtfr.randgen import GenConfig, derive_seed, gen_cycle_sampled
from mtfr.solvers import _surviving_cycles

try:
    from mtfr import _kernels as compiled
except ImportError:
    compiled = None


def best_of(repeat: int, fn: Callable[[], object]) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def workloads(impl: ModuleType, graphs: list, n_small: int):
    igs = [IndexedDigraph(g, impl) for g in graphs]

    def survivors():
        for ig in igs:
            alive, arcs = ig.node_mask(), ig.arc_mask()
            for v in range(ig.n):
                alive[v] = 0
                ig.survivors(alive, arcs)
                alive[v] = 1

    def cycle_counts():
        for ig in igs:
            ig.cycle_counts(ig.node_mask())

    def hitting_set():
        far = time.monotonic() + 600
        for ig in igs:
            alive, arcs = ig.survivors(ig.node_mask(), ig.arc_mask()), ig.arc_mask()
            sets = _surviving_cycles(ig, alive, arcs, False)
            min_hitting_set(ig.n, sets, ig.n + 1, 10**6, far, impl)

    small = [IndexedDigraph(g, impl) for g in graphs if len(g.nodes) <= 2 * n_small]

    def brute_force():
        for ig in small:
            ig.brute_force_nodes(ig.n)

    big = IndexedDigraph(project_dependency_digraph(gen_cycle_sampled(GenConfig(2000, 6, 1))), impl)

    def survivors_large():
        alive, arcs = big.node_mask(), big.arc_mask()
        for v in range(0, big.n, 40):
            alive[v] = 0
            big.survivors(alive, arcs)
            alive[v] = 1

    return {"survivors": survivors, "survivors_2000": survivors_large, "cycle_counts": cycle_counts,
            "hitting_set": hitting_set, "brute_force": brute_force}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10, help="nodes per side")
    ap.add_argument("--instances", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    graphs = [
        project_dependency_digraph(gen_cycle_sampled(GenConfig(args.n, 6, derive_seed(args.seed, args.n, t))))
        for t in range(args.instances)
    ]
    # brute force is exponential; use the first few graphs at a smaller N
    n_small = min(args.n, 6)
    graphs_small = [
        project_dependency_digraph(gen_cycle_sampled(GenConfig(n_small, 6, derive_seed(args.seed, n_small, t))))
        for t in range(5)
    ]
    impls = [("python", _kernels_py)] + ([("cython", compiled)] if compiled else [])
    print(f"N={args.n}, {args.instances} instances, best of {args.repeat}")
    print(f"{'kernel':<16}" + "".join(f"{name:>12}" for name, _ in impls) + ("   speedup" if compiled else ""))
    per_impl = {name: workloads(impl, graphs, n_small) for name, impl in impls}
    for name, impl in impls:
        per_impl[name]["brute_force"] = workloads(impl, graphs_small, n_small)["brute_force"]
    for kernel in ("survivors", "survivors_2000", "cycle_counts", "hitting_set", "brute_force"):
        secs = [best_of(args.repeat, per_impl[name][kernel]) for name, _ in impls]
        line = f"{kernel:<16}" + "".join(f"{s * 1000:>10.1f}ms" for s in secs)
        if compiled:
            line += f"   {secs[0] / secs[1]:>6.1f}x"
        print(line)
    if not compiled:
        print("compiled kernels not built; run: python3 setup.py build_ext --inplace")


if __name__ == "__main__":
    main()
