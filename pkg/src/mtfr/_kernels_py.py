"""Pure-Python kernels. Same signatures and results as the compiled ``_kernels``.

All graphs are integer indexed. A digraph is given by parallel arc arrays
``arc_src``/``arc_dst`` plus an out-arc CSR (``out_ptr``, ``out_arc``) listing
arc ids per source node. Flags are bytearrays of 0/1.
"""

from __future__ import annotations

import time
from itertools import combinations


def survivors(n, arc_src, arc_dst, out_ptr, out_arc, node_alive, arc_alive):
    """Greatest set of alive nodes in which every node has an alive in-arc from the set."""
    alive = bytearray(node_alive)
    cnt = [0] * n
    for a in range(len(arc_src)):
        if arc_alive[a] and alive[arc_src[a]] and alive[arc_dst[a]]:
            cnt[arc_dst[a]] += 1
    stack = [v for v in range(n) if alive[v] and cnt[v] == 0]
    for v in stack:
        alive[v] = 0
    while stack:
        v = stack.pop()
        for k in range(out_ptr[v], out_ptr[v + 1]):
            a = out_arc[k]
            if not arc_alive[a]:
                continue
            w = arc_dst[a]
            if alive[w]:
                cnt[w] -= 1
                if cnt[w] == 0:
                    alive[w] = 0
                    stack.append(w)
    return alive


def _dies(n, arc_src, arc_dst, out_ptr, out_arc, node_alive, arc_alive):
    return not any(survivors(n, arc_src, arc_dst, out_ptr, out_arc, node_alive, arc_alive))


def brute_force_nodes(n, arc_src, arc_dst, out_ptr, out_arc, max_k):
    """Lexicographically first smallest node set whose removal kills every node."""
    arc_alive = bytearray(b"\x01" * len(arc_src))
    for k in range(0, min(max_k, n) + 1):
        for combo in combinations(range(n), k):
            node_alive = bytearray(b"\x01" * n)
            for v in combo:
                node_alive[v] = 0
            if _dies(n, arc_src, arc_dst, out_ptr, out_arc, node_alive, arc_alive):
                return list(combo)
    return None


def brute_force_groups(n, arc_src, arc_dst, out_ptr, out_arc, group_ptr, group_arc, max_k):
    """Same as :func:`brute_force_nodes` but removing groups of arcs."""
    g = len(group_ptr) - 1
    node_alive = bytearray(b"\x01" * n)
    for k in range(0, min(max_k, g) + 1):
        for combo in combinations(range(g), k):
            arc_alive = bytearray(b"\x01" * len(arc_src))
            for i in combo:
                for j in range(group_ptr[i], group_ptr[i + 1]):
                    arc_alive[group_arc[j]] = 0
            if _dies(n, arc_src, arc_dst, out_ptr, out_arc, node_alive, arc_alive):
                return list(combo)
    return None


class _HittingSearch:
    def __init__(self, n, set_ptr, set_elem, bound, node_budget, deadline):
        self.n = n
        self.m = len(set_ptr) - 1
        self.sets = [list(set_elem[set_ptr[i]:set_ptr[i + 1]]) for i in range(self.m)]
        self.elem_sets = [[] for _ in range(n)]
        for i, s in enumerate(self.sets):
            for e in s:
                self.elem_sets[e].append(i)
        self.cover = [0] * self.m
        self.avail = [len(s) for s in self.sets]
        self.excl = [0] * n
        self.chosen: list[int] = []
        self.best_size = bound
        self.best = None
        self.nodes = 0
        self.node_budget = node_budget
        self.deadline = deadline
        self.aborted = False

    def _lower_bound(self):
        used = set()
        lb = 0
        for i, s in enumerate(self.sets):
            if self.cover[i]:
                continue
            free = [e for e in s if not self.excl[e]]
            if not used.intersection(free):
                used.update(free)
                lb += 1
        return lb

    def run(self, depth):
        self.nodes += 1
        if self.nodes > self.node_budget or (
            self.nodes & 1023 == 0 and time.monotonic() > self.deadline
        ):
            self.aborted = True
            return
        branch = -1
        for i in range(self.m):
            if not self.cover[i] and (branch < 0 or self.avail[i] < self.avail[branch]):
                branch = i
        if branch < 0:
            if depth < self.best_size:
                self.best_size = depth
                self.best = sorted(self.chosen)
            return
        if self.avail[branch] == 0:
            return
        if depth + self._lower_bound() >= self.best_size:
            return
        excluded = []
        for e in self.sets[branch]:
            if self.excl[e]:
                continue
            for i in self.elem_sets[e]:
                self.cover[i] += 1
            self.chosen.append(e)
            self.run(depth + 1)
            self.chosen.pop()
            for i in self.elem_sets[e]:
                self.cover[i] -= 1
            if self.aborted:
                break
            self.excl[e] += 1
            for i in self.elem_sets[e]:
                self.avail[i] -= 1
            excluded.append(e)
        for e in excluded:
            self.excl[e] -= 1
            for i in self.elem_sets[e]:
                self.avail[i] += 1


def min_hitting_set(n, set_ptr, set_elem, bound, node_budget, deadline):
    """Branch-and-bound minimum hitting set.

    Only sets strictly smaller than ``bound`` are reported. Elements of each
    set must be listed in ascending order; branching tries smaller elements
    first so the first optimum found favours small indices.

    Returns ``(best, branch_nodes, complete)`` with ``best`` a sorted list or
    None when nothing below ``bound`` was found.
    """
    search = _HittingSearch(n, set_ptr, set_elem, bound, node_budget, deadline)
    search.run(0)
    return search.best, search.nodes, not search.aborted


def _scc_of(s, n, arc_src, arc_dst, out_ptr, out_arc, node_alive):
    """Nodes > s in the strongly connected component of ``s`` among alive nodes >= s."""
    ok = [bool(node_alive[v]) and v >= s for v in range(n)]
    pred = [[] for _ in range(n)]
    for a in range(len(arc_src)):
        pred[arc_dst[a]].append(arc_src[a])
    fwd = {s}
    stack = [s]
    while stack:
        v = stack.pop()
        for k in range(out_ptr[v], out_ptr[v + 1]):
            w = arc_dst[out_arc[k]]
            if ok[w] and w not in fwd:
                fwd.add(w)
                stack.append(w)
    bwd = {s}
    stack = [s]
    while stack:
        v = stack.pop()
        for u in pred[v]:
            if ok[u] and u not in bwd:
                bwd.add(u)
                stack.append(u)
    return sorted((fwd & bwd) - {s})


def cycle_counts(n, arc_src, arc_dst, out_ptr, out_arc, node_alive, max_k):
    """Number of elementary cycles through each node, among alive nodes.

    Each cycle is counted once from its smallest node ``s`` by a DP over the
    set of visited nodes; only path states actually reachable are stored.
    ``max_k`` bounds the component size handled (compiled kernel memory);
    larger components raise ValueError.
    """
    counts = [0] * n
    for s in range(n):
        if not node_alive[s]:
            continue
        members = _scc_of(s, n, arc_src, arc_dst, out_ptr, out_arc, node_alive)
        k = len(members)
        if k == 0:
            continue
        if k > max_k:
            raise ValueError(f"component of {k + 1} nodes exceeds cycle-count limit")
        local = {v: i for i, v in enumerate(members)}
        layer: dict[tuple[int, int], int] = {}
        for q in range(out_ptr[s], out_ptr[s + 1]):
            w = arc_dst[out_arc[q]]
            if w in local:
                layer[(1 << local[w], local[w])] = 1
        cyc: dict[int, int] = {}
        while layer:
            nxt: dict[tuple[int, int], int] = {}
            for (mask, j), c in layer.items():
                v = members[j]
                for q in range(out_ptr[v], out_ptr[v + 1]):
                    w = arc_dst[out_arc[q]]
                    if w == s:
                        cyc[mask] = cyc.get(mask, 0) + c
                        continue
                    lw = local.get(w)
                    if lw is not None and not (mask >> lw) & 1:
                        key = (mask | (1 << lw), lw)
                        nxt[key] = nxt.get(key, 0) + c
            layer = nxt
        for mask, c in cyc.items():
            counts[s] += c
            for j in range(k):
                if (mask >> j) & 1:
                    counts[members[j]] += c
    return counts
