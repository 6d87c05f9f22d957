"""Minimum Total Failure Removals (MTFR) solvers.

In star mode a relay operates exactly when it has a supporting in-arc from
another operating relay, so total failure means no directed cycle survives.
Node-MTFR is therefore a minimum feedback vertex set of the dependency
digraph and Edge-MTFR a minimum feedback arc set. With bidirectional
dependencies every pair is a 2-cycle, so Node-MTFR becomes a minimum vertex
cover (solved through maximum matching) and Edge-MTFR is every pair.
"""

from __future__ import annotations

import enum
import time
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Sequence

from . import kernels
from .cascade import RemovalSet, Variant, is_total_failure
from .cycles import DEFAULT_CAP, CycleSet, enumerate_cycles, prune_acyclic_arcs
from .errors import (
    NotBidirectionalError,
    NotUnidirectionalError,
    TooLargeError,
    TruncatedInputError,
)
from .model import DepDigraph, Edge, NetworkSpec, Side, is_star_mode, project_dependency_digraph

BRUTE_FORCE_MAX_RELAYS = 24


class Method(str, enum.Enum):
    EXACT_BB = "exact"
    GREEDY_CYCLE = "greedy-cycle"
    GREEDY_DEGREE = "greedy-degree"
    VERTEX_COVER = "vertex-cover"
    BIDIR_EDGE_ALL = "edge-all"
    BRUTE_FORCE = "brute"


@dataclass(frozen=True)
class Budget:
    max_branch_nodes: int = 10**6
    max_seconds: float = 60.0


@dataclass(frozen=True)
class SolveReport:
    removal: RemovalSet
    size: int
    method: Method
    optimal: bool
    verified_total_failure: bool
    stats: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def budget_exceeded(self) -> bool:
        return bool(self.stats.get("budget_exceeded", False))


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[Edge]

    def __len__(self) -> int:
        return len(self.pairs)


def _report(spec, removal, method, optimal, started, **stats) -> SolveReport:
    stats["runtime_s"] = time.perf_counter() - started
    return SolveReport(
        removal=removal,
        size=len(removal),
        method=method,
        optimal=optimal,
        verified_total_failure=is_total_failure(spec, removal),
        stats=stats,
    )


# ---------------------------------------------------------------------------
# exact solvers: lazy cycle generation + branch and bound


def _surviving_cycles(ig: kernels.IndexedDigraph, alive: bytearray, arc_alive: bytearray,
                      as_arcs: bool) -> list[tuple[int, ...]]:
    """Walk backwards from surviving nodes to collect some surviving cycles.

    Every surviving node has a surviving supporter, so walking to the smallest
    supporter must revisit a node. Returns cycles as node or arc indices.
    """
    n = ig.n
    in_arcs: list[list[int]] = [[] for _ in range(n)]
    for a in range(ig.m):
        if arc_alive[a] and alive[ig.arc_src[a]] and alive[ig.arc_dst[a]]:
            in_arcs[ig.arc_dst[a]].append(a)
    for lst in in_arcs:
        lst.sort(key=lambda a: ig.arc_src[a])
    seen: set[int] = set()
    found: list[tuple[int, ...]] = []
    for v in range(n):
        if not alive[v] or v in seen:
            continue
        pos: dict[int, int] = {}
        walk: list[int] = []
        via: list[int] = []
        u = v
        while u not in pos:
            pos[u] = len(walk)
            walk.append(u)
            a = in_arcs[u][0]
            via.append(a)
            u = ig.arc_src[a]
        start = pos[u]
        seen.update(walk)
        cyc = via[start:] if as_arcs else walk[start:]
        found.append(tuple(sorted(cyc)))
    return found


def _greedy_hitting(n: int, sets: Sequence[Sequence[int]]) -> list[int]:
    remaining = [set(s) for s in sets]
    picked: list[int] = []
    while remaining:
        counts = Counter(e for s in remaining for e in s)
        best = min(counts, key=lambda e: (-counts[e], e))
        picked.append(best)
        remaining = [s for s in remaining if best not in s]
    return sorted(picked)


def _lazy_exact(ig: kernels.IndexedDigraph, as_arcs: bool, budget: Budget):
    """Minimum set of nodes (or arcs) killing every cycle, by lazy cycle generation.

    Returns ``(chosen indices, optimal, stats)``.
    """
    n_elems = ig.m if as_arcs else ig.n
    deadline = time.monotonic() + budget.max_seconds
    all_arcs = bytearray(b"\x01" * ig.m)
    all_nodes = bytearray(b"\x01" * ig.n)

    def alive_after(chosen: Sequence[int]) -> tuple[bytearray, bytearray]:
        nodes, arcs = bytearray(all_nodes), bytearray(all_arcs)
        for e in chosen:
            (arcs if as_arcs else nodes)[e] = 0
        return ig.survivors(nodes, arcs), arcs

    working: list[tuple[int, ...]] = []
    known: set[tuple[int, ...]] = set()
    chosen: list[int] = []
    branch_nodes = 0
    iterations = 0
    exceeded = False
    while True:
        alive, arcs = alive_after(chosen)
        if not any(alive):
            break
        iterations += 1
        for cyc in _surviving_cycles(ig, alive, arcs, as_arcs):
            if cyc not in known:
                known.add(cyc)
                working.append(cyc)
        if exceeded:
            # repair an over-budget incumbent greedily until total failure
            chosen = sorted(set(chosen) | set(_greedy_hitting(n_elems, [
                c for c in working if not set(c) & set(chosen)
            ])))
            continue
        incumbent = _greedy_hitting(n_elems, working)
        left = budget.max_branch_nodes - branch_nodes
        best, used, complete = kernels.min_hitting_set(
            n_elems, working, len(incumbent) + 1, max(left, 0), deadline
        )
        branch_nodes += used
        if not complete:
            exceeded = True
        chosen = best if best is not None else incumbent
    stats = {
        "cycles_considered": len(working),
        "branch_nodes": branch_nodes,
        "iterations": iterations,
        "budget_exceeded": exceeded,
    }
    return chosen, not exceeded, stats


def exact_node_mtfr(spec: NetworkSpec, budget: Budget | None = None) -> SolveReport:
    """Exact Node-MTFR (minimum feedback vertex set of the dependency digraph)."""
    started = time.perf_counter()
    g = project_dependency_digraph(spec)
    ig = kernels.IndexedDigraph(g)
    chosen, optimal, stats = _lazy_exact(ig, False, budget or Budget())
    removal = RemovalSet.nodes(g.nodes[i] for i in chosen)
    return _report(spec, removal, Method.EXACT_BB, optimal, started, **stats)


def exact_edge_mtfr(spec: NetworkSpec, budget: Budget | None = None) -> SolveReport:
    """Exact Edge-MTFR for unidirectional star networks (minimum feedback arc set)."""
    started = time.perf_counter()
    g = project_dependency_digraph(spec)
    if spec.is_bidirectional:
        raise NotUnidirectionalError("exact_edge_mtfr needs unidirectional dependencies; use bidir_edge_mtfr")
    ig = kernels.IndexedDigraph(g)
    chosen, optimal, stats = _lazy_exact(ig, True, budget or Budget())
    removal = RemovalSet.edges(g.arcs[i] for i in chosen)
    return _report(spec, removal, Method.EXACT_BB, optimal, started, **stats)


# ---------------------------------------------------------------------------
# heuristics


def greedy_cycle_hitting(cs: CycleSet, spec: NetworkSpec | None = None) -> SolveReport:
    """Repeatedly remove the node lying on the most remaining cycles.

    ``spec`` is used only to verify the result; without it the report's
    ``verified_total_failure`` is False.
    """
    if cs.truncated:
        raise TruncatedInputError("cycle set was truncated; greedy hitting needs every cycle")
    started = time.perf_counter()
    remaining = [set(c) for c in cs.cycles]
    picked = []
    while remaining:
        counts = Counter(v for c in remaining for v in c)
        best = min(counts, key=lambda v: (-counts[v], v))
        picked.append(best)
        remaining = [c for c in remaining if best not in c]
    removal = RemovalSet.nodes(picked)
    stats = {"cycles_considered": len(cs), "runtime_s": time.perf_counter() - started}
    if spec is None:
        return SolveReport(removal, len(removal), Method.GREEDY_CYCLE, False, False, stats)
    return _report(spec, removal, Method.GREEDY_CYCLE, False, started, cycles_considered=len(cs))


def greedy_cycle_mtfr(spec: NetworkSpec, cap: int = DEFAULT_CAP) -> SolveReport:
    """Cycle-greedy on a star network.

    Cycles are listed explicitly when there are at most ``cap`` of them.
    Otherwise the same picks are made from per-node cycle counts of the graph
    with the already picked nodes deleted, without listing any cycle.
    """
    g = project_dependency_digraph(spec)
    cs = enumerate_cycles(g, cap)
    if not cs.truncated:
        return greedy_cycle_hitting(cs, spec)
    started = time.perf_counter()
    ig = kernels.IndexedDigraph(g)
    alive = bytearray(b"\x01" * ig.n)
    picked: list[str] = []
    while True:
        try:
            counts = ig.cycle_counts(alive)
        except ValueError as exc:
            raise TruncatedInputError(f"more than {cap} cycles and {exc}") from None
        if not any(counts):
            break
        best = min(range(ig.n), key=lambda i: (-counts[i], i))
        alive[best] = 0
        picked.append(g.nodes[best])
    return _report(spec, RemovalSet.nodes(picked), Method.GREEDY_CYCLE, False, started,
                   cycles_over_cap=True)


def greedy_degree(spec: NetworkSpec) -> SolveReport:
    """Prune acyclic arcs, remove the max out-degree node, cascade, repeat."""
    started = time.perf_counter()
    g = project_dependency_digraph(spec)
    ig = kernels.IndexedDigraph(g)
    removed: list[str] = []
    rounds = 0
    while True:
        alive = set(ig.surviving_ids(removed))
        sub = DepDigraph(
            tuple(v for v in g.nodes if v in alive),
            tuple(a for a in g.arcs if a[0] in alive and a[1] in alive),
            g.side_of,
        )
        pruned = prune_acyclic_arcs(sub)
        if not pruned.arcs:
            break
        rounds += 1
        outdeg = Counter(a for a, _ in pruned.arcs)
        removed.append(min(outdeg, key=lambda v: (-outdeg[v], v)))
    return _report(spec, RemovalSet.nodes(removed), Method.GREEDY_DEGREE, False, started,
                   iterations=rounds)


# ---------------------------------------------------------------------------
# bidirectional: matching and vertex cover


def _bipartite_sides(g: DepDigraph) -> tuple[list[str], dict[str, list[str]]]:
    if not g.is_symmetric():
        raise NotBidirectionalError("dependency arcs are not in antiparallel pairs")
    left = [v for v in g.nodes if g.side_of[v] is Side.POWER]
    adj = {u: [w for w in g.succ[u]] for u in left}
    return left, adj


def _hopcroft_karp(left: list[str], adj: dict[str, list[str]]) -> dict[str, str]:
    """Maximum matching; returns map left -> right. Deterministic in input order."""
    match_l: dict[str, str | None] = {u: None for u in left}
    match_r: dict[str, str] = {}
    INF = float("inf")
    while True:
        dist: dict[str, float] = {}
        queue = deque()
        for u in left:
            if match_l[u] is None:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                nxt = match_r.get(w)
                if nxt is None:
                    found = True
                elif dist[nxt] == INF:
                    dist[nxt] = dist[u] + 1
                    queue.append(nxt)
        if not found:
            break
        for root in left:
            if match_l[root] is not None:
                continue
            # iterative layered DFS for one augmenting path from root
            stack = [(root, 0)]
            path: list[tuple[str, str]] = []
            while stack:
                u, i = stack[-1]
                if i >= len(adj[u]):
                    dist[u] = INF
                    stack.pop()
                    if path:
                        path.pop()
                    continue
                stack[-1] = (u, i + 1)
                w = adj[u][i]
                nxt = match_r.get(w)
                if nxt is None:
                    path.append((u, w))
                    for pu, pw in path:
                        match_l[pu] = pw
                        match_r[pw] = pu
                    break
                if dist[nxt] == dist[u] + 1:
                    path.append((u, w))
                    stack.append((nxt, 0))
    return {u: w for u, w in match_l.items() if w is not None}


def max_matching(g: DepDigraph) -> Matching:
    left, adj = _bipartite_sides(g)
    return Matching(frozenset(_hopcroft_karp(left, adj).items()))


def konig_cover(g: DepDigraph, matching: Matching) -> set[str]:
    """Minimum vertex cover from a maximum matching (alternating reachability)."""
    left, adj = _bipartite_sides(g)
    match_l = dict(matching.pairs)
    match_r = {w: u for u, w in matching.pairs}
    reached = set()
    queue = deque(u for u in left if u not in match_l)
    reached.update(queue)
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w in reached or match_l.get(u) == w:
                continue
            reached.add(w)
            back = match_r.get(w)
            if back is not None and back not in reached:
                reached.add(back)
                queue.append(back)
    right = [v for v in g.nodes if g.side_of[v] is Side.COMM]
    return {u for u in left if u not in reached} | {w for w in right if w in reached}


def _require_bidirectional(spec: NetworkSpec) -> None:
    if not spec.is_bidirectional:
        raise NotBidirectionalError("network is not in bidirectional mode")


def bidir_node_mtfr(spec: NetworkSpec) -> SolveReport:
    started = time.perf_counter()
    g = project_dependency_digraph(spec)
    _require_bidirectional(spec)
    m = max_matching(g)
    cover = konig_cover(g, m)
    return _report(spec, RemovalSet.nodes(cover), Method.VERTEX_COVER, True, started,
                   matching_size=len(m))


def bidir_edge_mtfr(spec: NetworkSpec) -> SolveReport:
    started = time.perf_counter()
    project_dependency_digraph(spec)
    _require_bidirectional(spec)
    removal = RemovalSet.edges(spec.dependency_pairs())
    return _report(spec, removal, Method.BIDIR_EDGE_ALL, True, started)


# ---------------------------------------------------------------------------
# brute force oracle


def brute_force_mtfr(spec: NetworkSpec, variant: Variant | str = Variant.NODE) -> SolveReport:
    """Smallest removal by exhaustive search, lexicographically first per size."""
    variant = Variant(variant)
    if len(spec.relays) > BRUTE_FORCE_MAX_RELAYS:
        raise TooLargeError(
            f"{len(spec.relays)} relays exceeds the brute-force limit of {BRUTE_FORCE_MAX_RELAYS}"
        )
    started = time.perf_counter()
    if variant is Variant.NODE:
        items: list = list(spec.relays)
    elif spec.is_bidirectional:
        items = list(spec.dependency_pairs())
    else:
        items = sorted(spec.dep_edges)
    make: Callable[[Sequence], RemovalSet] = (
        RemovalSet.nodes if variant is Variant.NODE else RemovalSet.edges
    )

    if is_star_mode(spec):
        g = project_dependency_digraph(spec)
        ig = kernels.IndexedDigraph(g)
        if variant is Variant.NODE:
            found = ig.brute_force_nodes(len(items))
        else:
            groups = [
                [ig.arc_index[p]] + ([ig.arc_index[(p[1], p[0])]] if spec.is_bidirectional else [])
                for p in items
            ]
            found = ig.brute_force_groups(groups, len(items))
        assert found is not None
        removal = make([items[i] for i in found])
    else:
        removal = None
        for k in range(len(items) + 1):
            for combo in combinations(items, k):
                if is_total_failure(spec, make(combo)):
                    removal = make(combo)
                    break
            if removal is not None:
                break
        assert removal is not None
    return _report(spec, removal, Method.BRUTE_FORCE, True, started)


def solve(spec: NetworkSpec, method: Method | str, variant: Variant | str = Variant.NODE,
          budget: Budget | None = None, cap: int = DEFAULT_CAP) -> SolveReport:
    """Dispatch by method name (the CLI ``--method`` values)."""
    method, variant = Method(method), Variant(variant)
    if method is Method.EXACT_BB:
        return exact_edge_mtfr(spec, budget) if variant is Variant.EDGE else exact_node_mtfr(spec, budget)
    if method is Method.GREEDY_CYCLE:
        return greedy_cycle_mtfr(spec, cap)
    if method is Method.GREEDY_DEGREE:
        return greedy_degree(spec)
    if method is Method.VERTEX_COVER:
        return bidir_node_mtfr(spec)
    if method is Method.BIDIR_EDGE_ALL:
        return bidir_edge_mtfr(spec)
    return brute_force_mtfr(spec, variant)
