import itertools
import random

import pytest

from mtfr.cycles import CycleSet, enumerate_cycles, prune_acyclic_arcs, sccs
from mtfr.model import DepDigraph, Mode, Side, project_dependency_digraph, star_network
from mtfr.randgen import to_bidirectional

from conftest import random_instances


def digraph(arcs, nodes=None):
    nodes = sorted(nodes or {v for a in arcs for v in a})
    side = {v: Side.POWER if v.startswith("S") else Side.COMM for v in nodes}
    return DepDigraph(tuple(nodes), tuple(sorted(arcs)), side)


SIX = [("S1", "R1"), ("R1", "S2"), ("S2", "R2"), ("R2", "S3"), ("S3", "R3"), ("R3", "S1")]


def brute_cycles(g):
    """Every elementary cycle by trying all node sequences starting at their minimum."""
    arcs = set(g.arcs)
    found = set()
    nodes = list(g.nodes)
    for k in range(2, len(nodes) + 1):
        for seq in itertools.permutations(nodes, k):
            if seq[0] != min(seq):
                continue
            if all((seq[i], seq[(i + 1) % k]) in arcs for i in range(k)):
                found.add(seq)
    return found


def test_scc_examples():
    assert sccs(digraph(SIX)) == [["R1", "R2", "R3", "S1", "S2", "S3"]]
    two = digraph([("S1", "R1"), ("R1", "S1"), ("S2", "R2"), ("R2", "S2")])
    assert sccs(two) == [["R1", "S1"], ["R2", "S2"]]
    path = digraph([("S1", "R1"), ("R1", "S2")])
    assert sccs(path) == [["R1"], ["S1"], ["S2"]]


def test_prune_drops_chord_out_of_cycle():
    arcs = SIX[:2] + [("S2", "R2"), ("R2", "S3"), ("S3", "R3"), ("R3", "S1")]
    g = digraph(arcs + [("R3", "S4"), ("S4", "R4")])
    pruned = prune_acyclic_arcs(g)
    assert set(pruned.arcs) == set(SIX)
    assert pruned.nodes == g.nodes


def test_prune_acyclic_and_full():
    assert prune_acyclic_arcs(digraph([("S1", "R1"), ("R1", "S2")])).arcs == ()
    g = digraph(SIX)
    assert prune_acyclic_arcs(g) == g


def test_enumerate_six_cycle():
    cs = enumerate_cycles(digraph(SIX), 100)
    assert len(cs) == 1 and len(cs.cycles[0]) == 6 and not cs.truncated
    assert cs.cycles[0] == ("R1", "S2", "R2", "S3", "R3", "S1")


def test_enumerate_k22_bidirectional():
    pairs = [("S1", "R1"), ("S1", "R2"), ("S2", "R1"), ("S2", "R2")]
    g = project_dependency_digraph(star_network(["S1", "S2"], ["R1", "R2"], pairs, Mode.BIDIRECTIONAL))
    cs = enumerate_cycles(g, 100)
    assert sorted(map(len, cs.cycles)) == [2, 2, 2, 2, 4, 4]
    assert set(cs.cycles) == brute_cycles(g)


def test_enumerate_acyclic():
    cs = enumerate_cycles(digraph([("S1", "R1"), ("R1", "S2")]))
    assert len(cs) == 0 and not cs.truncated


def test_truncation_flag():
    pairs = [("S1", "R1"), ("S1", "R2"), ("S2", "R1"), ("S2", "R2")]
    g = project_dependency_digraph(star_network(["S1", "S2"], ["R1", "R2"], pairs, Mode.BIDIRECTIONAL))
    cs = enumerate_cycles(g, 4)
    assert cs.truncated and len(cs) == 4
    assert cs.cycles == enumerate_cycles(g).cycles[:4]
    assert not enumerate_cycles(g, 6).truncated
    with pytest.raises(ValueError):
        enumerate_cycles(g, 0)


def test_incidence_consistent():
    cs = CycleSet.from_cycles([("a", "b"), ("b", "c"), ("c", "d")])
    assert cs.node_incidence == {"a": {0}, "b": {0, 1}, "c": {1, 2}, "d": {2}}


def test_matches_brute_force_on_random_digraphs():
    rng = random.Random(7)
    for _ in range(150):
        k = rng.randint(1, 4)
        subs = [f"S{i}" for i in range(1, k + 1)]
        rts = [f"R{i}" for i in range(1, rng.randint(1, 4) + 1)]
        p = rng.uniform(0.2, 0.8)
        arcs = [(a, b) for a in subs for b in rts if rng.random() < p]
        arcs += [(b, a) for a in subs for b in rts if rng.random() < p]
        g = digraph(arcs, subs + rts)
        cs = enumerate_cycles(g)
        assert len(cs) == len(set(cs.cycles)) == len(brute_cycles(g))
        assert set(cs.cycles) == brute_cycles(g)
        assert all(len(c) % 2 == 0 for c in cs.cycles)
        pruned = prune_acyclic_arcs(g)
        assert prune_acyclic_arcs(pruned) == pruned
        assert enumerate_cycles(pruned).cycles == cs.cycles


def test_bidirectional_pairs_are_two_cycles():
    for _, spec in random_instances(40, 5, base_seed=4):
        g = project_dependency_digraph(to_bidirectional(spec))
        two = {c for c in enumerate_cycles(g).cycles if len(c) == 2}
        assert {tuple(sorted(a)) for a in g.arcs} == two


def test_cycles_start_at_smallest_node_in_order():
    for _, spec in random_instances(30, 5, base_seed=8):
        cs = enumerate_cycles(project_dependency_digraph(spec))
        starts = [c[0] for c in cs.cycles]
        assert all(c[0] == min(c) for c in cs.cycles)
        assert starts == sorted(starts)
