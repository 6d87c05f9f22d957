"""Strongly connected components, acyclic-arc pruning and elementary cycles."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator

from .model import DepDigraph, Edge

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class CycleSet:
    cycles: tuple[tuple[str, ...], ...]
    truncated: bool = False
    node_incidence: dict[str, frozenset[int]] = field(default_factory=dict, compare=False)

    @classmethod
    def from_cycles(cls, cycles, truncated: bool = False) -> "CycleSet":
        cycles = tuple(tuple(c) for c in cycles)
        inc: dict[str, set[int]] = defaultdict(set)
        for i, c in enumerate(cycles):
            for v in c:
                inc[v].add(i)
        return cls(cycles, truncated, {v: frozenset(s) for v, s in inc.items()})

    def __len__(self) -> int:
        return len(self.cycles)

    def arc_sets(self) -> list[tuple[Edge, ...]]:
        return [cycle_arcs(c) for c in self.cycles]


def cycle_arcs(cycle: tuple[str, ...]) -> tuple[Edge, ...]:
    return tuple((cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))


def _tarjan(nodes: list[str], succ: dict[str, list[str]]) -> list[list[str]]:
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps: list[list[str]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            nbrs = succ[v]
            descended = False
            while i < len(nbrs):
                w = nbrs[i]
                i += 1
                if w not in index:
                    work.append((v, i))
                    work.append((w, 0))
                    descended = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def sccs(g: DepDigraph) -> list[list[str]]:
    """SCC partition; components sorted internally and ordered by smallest id."""
    comps = [sorted(c) for c in _tarjan(list(g.nodes), g.succ)]
    comps.sort(key=lambda c: c[0])
    return comps


def prune_acyclic_arcs(g: DepDigraph) -> DepDigraph:
    """Keep only arcs whose endpoints share a strongly connected component."""
    comp_of = {}
    for i, comp in enumerate(sccs(g)):
        for v in comp:
            comp_of[v] = i
    return g.with_arcs(arc for arc in g.arcs if comp_of[arc[0]] == comp_of[arc[1]])


def _circuits_from(start: str, succ: dict[str, list[str]]) -> Iterator[tuple[str, ...]]:
    """Johnson's circuit search rooted at ``start`` within an SCC given by ``succ``."""
    path = [start]
    blocked = {start}
    closed: set[str] = set()
    B: dict[str, set[str]] = defaultdict(set)
    stack = [(start, 0)]
    while stack:
        v, i = stack[-1]
        nbrs = succ[v]
        if i < len(nbrs):
            stack[-1] = (v, i + 1)
            w = nbrs[i]
            if w == start:
                yield tuple(path)
                closed.update(path)
            elif w not in blocked:
                path.append(w)
                stack.append((w, 0))
                closed.discard(w)
                blocked.add(w)
            continue
        if v in closed:
            pending = {v}
            while pending:
                u = pending.pop()
                if u in blocked:
                    blocked.discard(u)
                    pending.update(B[u])
                    B[u].clear()
        else:
            for w in nbrs:
                B[w].add(v)
        stack.pop()
        path.pop()


def iter_cycles(g: DepDigraph) -> Iterator[tuple[str, ...]]:
    """Elementary cycles, least start node first; each begins at its smallest id."""
    order = list(g.nodes)
    rank = {v: i for i, v in enumerate(order)}
    for s in order:
        keep = {v for v in order if rank[v] >= rank[s]}
        sub = {v: [w for w in g.succ[v] if w in keep] for v in keep}
        comp = next(c for c in _tarjan(sorted(keep, key=rank.__getitem__), sub) if s in c)
        if len(comp) == 1:
            continue
        members = set(comp)
        local = {v: [w for w in sub[v] if w in members] for v in members}
        yield from _circuits_from(s, local)


def enumerate_cycles(g: DepDigraph, cap: int = DEFAULT_CAP) -> CycleSet:
    if cap < 1:
        raise ValueError("cap must be positive")
    found = []
    for c in iter_cycles(g):
        if len(found) == cap:
            return CycleSet.from_cycles(found, truncated=True)
        found.append(c)
    return CycleSet.from_cycles(found, truncated=False)
