"""Operating set, cascade rounds, total-failure test and blackout impact.

A RELAY node operates when it (a) reaches a SOURCE of its own side through
intra edges whose intermediate relays also operate, and (b) has at least one
incoming dependency arc from an operating node. The operating set is the
greatest fixed point of these rules; since both conditions are monotone in
the candidate set, peeling violators in any order converges to the same set.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InvalidRemovalError
from .model import Edge, Kind, NetworkSpec, Side


class Variant(str, enum.Enum):
    NODE = "node"
    EDGE = "edge"


@dataclass(frozen=True)
class RemovalSet:
    """Initial removals: RELAY ids (NODE) or dependency arcs (EDGE).

    In a bidirectional network an EDGE removal names a dependency pair and
    deletes both of its arcs.
    """

    items: frozenset = field(default_factory=frozenset)
    variant: Variant = Variant.NODE

    @classmethod
    def nodes(cls, ids: Iterable[str] = ()) -> "RemovalSet":
        return cls(frozenset(ids), Variant.NODE)

    @classmethod
    def edges(cls, arcs: Iterable[Edge] = ()) -> "RemovalSet":
        return cls(frozenset(tuple(a) for a in arcs), Variant.EDGE)

    def __len__(self) -> int:
        return len(self.items)

    def sorted_items(self) -> list:
        return sorted(self.items)


@dataclass(frozen=True)
class CascadeTrace:
    initial: RemovalSet
    rounds: tuple[frozenset[str], ...]
    surviving: frozenset[str]


@dataclass(frozen=True)
class Impact:
    fraction: float
    power: float
    comm: float


def check_removals(spec: NetworkSpec, removals: RemovalSet) -> None:
    nm = spec.node_map
    if removals.variant is Variant.NODE:
        for v in removals.items:
            if v not in nm:
                raise InvalidRemovalError(f"unknown node {v!r}")
            if nm[v].kind is Kind.SOURCE:
                raise InvalidRemovalError(f"source node {v!r} cannot be removed")
    else:
        arcs = set(spec.dep_edges)
        for arc in removals.items:
            if tuple(arc) not in arcs:
                raise InvalidRemovalError(f"unknown dependency arc {arc[0]}>{arc[1]}")


def removed_arcs(spec: NetworkSpec, removals: RemovalSet) -> set[Edge]:
    """Arcs deleted by an EDGE removal (both directions in bidirectional mode)."""
    if removals.variant is not Variant.EDGE:
        return set()
    out = {tuple(a) for a in removals.items}
    if spec.is_bidirectional:
        out |= {(b, a) for a, b in out}
    return out  # type: ignore[return-value]


class _Evaluator:
    """Per-call adjacency for the two operating conditions."""

    def __init__(self, spec: NetworkSpec, removals: RemovalSet) -> None:
        check_removals(spec, removals)
        self.spec = spec
        dead_arcs = removed_arcs(spec, removals)
        self.intra: dict[str, list[str]] = {n.id: [] for n in spec.nodes}
        for a, b in spec.intra_edges:
            self.intra[a].append(b)
            self.intra[b].append(a)
        self.supporters: dict[str, list[str]] = {r: [] for r in spec.relays}
        for a, b in spec.dep_edges:
            if (a, b) not in dead_arcs:
                self.supporters[b].append(a)
        removed = removals.items if removals.variant is Variant.NODE else frozenset()
        self.start = frozenset(r for r in spec.relays if r not in removed)

    def violators(self, alive: frozenset[str]) -> frozenset[str]:
        sources = self.spec.sources
        reached = set(sources)
        queue = deque(sources)
        while queue:
            u = queue.popleft()
            for w in self.intra[u]:
                if w not in reached and w in alive:
                    reached.add(w)
                    queue.append(w)
        # intra edges never cross sides, so reaching any source means its own side's
        return frozenset(
            v for v in alive
            if v not in reached or not any(s in alive for s in self.supporters[v])
        )


def cascade_trace(spec: NetworkSpec, removals: RemovalSet) -> CascadeTrace:
    """Synchronous rounds of failures until the fixed point."""
    ev = _Evaluator(spec, removals)
    alive = ev.start
    rounds = []
    while True:
        failing = ev.violators(alive)
        if not failing:
            break
        rounds.append(failing)
        alive = alive - failing
    return CascadeTrace(removals, tuple(rounds), alive)


def operating_set(spec: NetworkSpec, removals: RemovalSet) -> frozenset[str]:
    return cascade_trace(spec, removals).surviving


def is_total_failure(spec: NetworkSpec, removals: RemovalSet) -> bool:
    return not operating_set(spec, removals)


def impact(spec: NetworkSpec, removals: RemovalSet) -> Impact:
    """Fraction of RELAY nodes not operating, overall and per side."""
    alive = operating_set(spec, removals)

    def frac(ids: tuple[str, ...]) -> float:
        if not ids:
            return 0.0
        return sum(1 for v in ids if v not in alive) / len(ids)

    return Impact(
        fraction=frac(spec.relays),
        power=frac(spec.relays_on(Side.POWER)),
        comm=frac(spec.relays_on(Side.COMM)),
    )
