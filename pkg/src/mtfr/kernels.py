"""Kernel backend selection and an integer-indexed view of a dependency digraph.

The compiled ``_kernels`` extension is used when importable; otherwise the
pure-Python ``_kernels_py`` module. Set ``MTFR_PURE_PYTHON=1`` to force the
fallback.
"""

from __future__ import annotations

import os
from array import array
from types import ModuleType
from typing import Iterable, Sequence

from . import _kernels_py

from .model import DepDigraph, Edge


def _load() -> tuple[ModuleType, str]:
    if os.environ.get("MTFR_PURE_PYTHON"):
        return _kernels_py, "python"
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        return _kernels_py, "python"
    return _kernels, "cython"


backend, BACKEND = _load()

# Largest component (minus its start node) the subset-DP cycle counter accepts;
# the compiled kernel needs 2**k * k * 8 bytes.
CYCLE_COUNT_MAX_K = 20


class IndexedDigraph:
    """Integer arrays for a :class:`DepDigraph`, built once and reused by kernels.

    Node indices follow ``g.nodes`` order; arc indices follow ``g.arcs`` order.
    """

    def __init__(self, g: DepDigraph, impl: ModuleType | None = None) -> None:
        self.graph = g
        self.impl = impl or backend
        self.n = len(g.nodes)
        idx = g.index
        self.arc_src = array("i", (idx[a] for a, _ in g.arcs))
        self.arc_dst = array("i", (idx[b] for _, b in g.arcs))
        self.arc_index = {arc: i for i, arc in enumerate(g.arcs)}
        ptr = [0] * (self.n + 1)
        for s in self.arc_src:
            ptr[s + 1] += 1
        for v in range(self.n):
            ptr[v + 1] += ptr[v]
        fill = list(ptr[:-1])
        out = [0] * len(g.arcs)
        for a, s in enumerate(self.arc_src):
            out[fill[s]] = a
            fill[s] += 1
        self.out_ptr = array("i", ptr)
        self.out_arc = array("i", out)

    @property
    def m(self) -> int:
        return len(self.arc_src)

    def node_mask(self, removed: Iterable[str] = ()) -> bytearray:
        mask = bytearray(b"\x01" * self.n)
        idx = self.graph.index
        for v in removed:
            mask[idx[v]] = 0
        return mask

    def arc_mask(self, removed: Iterable[Edge] = ()) -> bytearray:
        mask = bytearray(b"\x01" * self.m)
        for arc in removed:
            mask[self.arc_index[arc]] = 0
        return mask

    def survivors(self, node_alive: bytearray, arc_alive: bytearray) -> bytearray:
        return self.impl.survivors(
            self.n, self.arc_src, self.arc_dst, self.out_ptr, self.out_arc, node_alive, arc_alive
        )

    def surviving_ids(self, removed_nodes: Iterable[str] = (), removed_arcs: Iterable[Edge] = ()) -> list[str]:
        alive = self.survivors(self.node_mask(removed_nodes), self.arc_mask(removed_arcs))
        return [v for v, f in zip(self.graph.nodes, alive) if f]

    def cycle_counts(self, node_alive: bytearray, max_k: int = CYCLE_COUNT_MAX_K) -> list[int]:
        """Elementary cycles through each node of the alive subgraph."""
        return self.impl.cycle_counts(
            self.n, self.arc_src, self.arc_dst, self.out_ptr, self.out_arc, node_alive, max_k
        )

    def brute_force_nodes(self, max_k: int) -> list[int] | None:
        return self.impl.brute_force_nodes(
            self.n, self.arc_src, self.arc_dst, self.out_ptr, self.out_arc, max_k
        )

    def brute_force_groups(self, groups: Sequence[Sequence[int]], max_k: int) -> list[int] | None:
        ptr = [0]
        flat: list[int] = []
        for grp in groups:
            flat.extend(grp)
            ptr.append(len(flat))
        return self.impl.brute_force_groups(
            self.n, self.arc_src, self.arc_dst, self.out_ptr, self.out_arc,
            array("i", ptr), array("i", flat), max_k,
        )


def min_hitting_set(
    n: int,
    sets: Sequence[Sequence[int]],
    bound: int,
    node_budget: int,
    deadline: float,
    impl: ModuleType | None = None,
) -> tuple[list[int] | None, int, bool]:
    """Minimum hitting set of ``sets`` over elements ``0..n-1``; see ``_kernels_py``."""
    ptr = [0]
    flat: list[int] = []
    for s in sets:
        flat.extend(sorted(s))
        ptr.append(len(flat))
    return (impl or backend).min_hitting_set(
        n, array("i", ptr), array("i", flat), bound, node_budget, deadline
    )
