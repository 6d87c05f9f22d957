import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mtfr.errors import NotStarError, ParseError
from mtfr.model import (
    Kind,
    Mode,
    NetworkSpec,
    NodeRef,
    Side,
    is_star_mode,
    parse_network,
    project_dependency_digraph,
    serialize_network,
    star_network,
    validate,
)
from mtfr.randgen import GenConfig, gen_cycle_sampled, to_bidirectional

MINIMAL = {
    "mode": "bidirectional",
    "nodes": [
        {"id": "G", "side": "power", "kind": "source"},
        {"id": "S1", "side": "power", "kind": "relay"},
        {"id": "C", "side": "comm", "kind": "source"},
        {"id": "R1", "side": "comm", "kind": "relay"},
    ],
    "intra_edges": [["G", "S1"], ["C", "R1"]],
    "dep_edges": [["S1", "R1"], ["R1", "S1"]],
}


def doc(**changes):
    d = json.loads(json.dumps(MINIMAL))
    d.update(changes)
    return json.dumps(d)


def test_parse_minimal_network():
    spec = parse_network(doc())
    assert len(spec.nodes) == 4
    assert len(spec.intra_edges) == 2
    assert len(spec.dep_edges) == 2
    assert spec.mode is Mode.BIDIRECTIONAL


def test_single_listed_pair_is_symmetrized():
    spec = parse_network(doc(dep_edges=[["S1", "R1"]]))
    assert set(spec.dep_edges) == {("S1", "R1"), ("R1", "S1")}


def test_asymmetric_dependency_rejected_when_literal():
    with pytest.raises(ParseError) as err:
        parse_network(doc(dep_edges=[["S1", "R1"]]), symmetrize=False)
    assert err.value.code == "INVARIANT"
    assert "S1->R1" in str(err.value)


def test_source_in_dependency_rejected():
    with pytest.raises(ParseError) as err:
        parse_network(doc(dep_edges=[["G", "R1"]], mode="unidirectional"))
    assert err.value.code == "INVARIANT"
    assert "G->R1" in str(err.value)


@pytest.mark.parametrize(
    "text,code",
    [
        ("{not json", "SYNTAX"),
        (doc(mode="sideways"), "SCHEMA"),
        (json.dumps({k: v for k, v in MINIMAL.items() if k != "nodes"}), "SCHEMA"),
        (doc(nodes=[{"id": "G", "side": "power"}]), "SCHEMA"),
        (doc(intra_edges=[["G"]]), "SCHEMA"),
        (doc(nodes=MINIMAL["nodes"] + [{"id": "X", "side": "air", "kind": "relay"}]), "SCHEMA"),
    ],
)
def test_parse_error_codes(text, code):
    with pytest.raises(ParseError) as err:
        parse_network(text)
    assert err.value.code == code


def _minimal_spec(**kw):
    nodes = [
        NodeRef("G", Side.POWER, Kind.SOURCE),
        NodeRef("S1", Side.POWER, Kind.RELAY),
        NodeRef("C", Side.COMM, Kind.SOURCE),
        NodeRef("R1", Side.COMM, Kind.RELAY),
    ]
    fields = dict(
        nodes=tuple(nodes),
        intra_edges=(("G", "S1"), ("C", "R1")),
        dep_edges=(("S1", "R1"), ("R1", "S1")),
        mode=Mode.BIDIRECTIONAL,
    )
    fields.update(kw)
    return NetworkSpec(**fields)


def test_validate_valid_is_empty():
    assert validate(_minimal_spec()) == []


def test_validate_duplicate_id():
    spec = _minimal_spec()
    spec = _minimal_spec(nodes=spec.nodes + (NodeRef("S1", Side.POWER, Kind.RELAY),))
    assert [v.code for v in validate(spec)] == ["DUPLICATE_ID"]


def test_validate_cross_side_intra():
    spec = _minimal_spec(intra_edges=(("G", "S1"), ("C", "R1"), ("S1", "R1")))
    assert [v.code for v in validate(spec)] == ["CROSS_SIDE_INTRA"]


def test_validate_asymmetric_bidirectional():
    spec = _minimal_spec(dep_edges=(("S1", "R1"),))
    assert [v.code for v in validate(spec)] == ["ASYMMETRIC_DEP"]


def test_validate_does_not_mutate():
    spec = _minimal_spec(dep_edges=(("S1", "R1"),))
    before = (spec.nodes, spec.intra_edges, spec.dep_edges)
    validate(spec)
    assert (spec.nodes, spec.intra_edges, spec.dep_edges) == before


def test_validate_other_violations():
    spec = _minimal_spec(
        intra_edges=(("G", "S1"), ("S1", "G"), ("C", "C"), ("C", "R9")),
        dep_edges=(("S1", "R1"), ("S1", "R1"), ("R1", "S1"), ("R1", "C")),
        mode=Mode.UNIDIRECTIONAL,
    )
    codes = sorted(v.code for v in validate(spec))
    assert codes == sorted(
        ["DUPLICATE_EDGE", "SELF_LOOP", "UNKNOWN_NODE", "DUPLICATE_EDGE", "SOURCE_IN_DEP", "SAME_SIDE_DEP"]
    )


def test_star_mode_two_stars():
    spec = star_network(["S1", "S2", "S3"], ["R1", "R2", "R3"], [("S1", "R1")])
    assert is_star_mode(spec)


def test_star_mode_false_for_cascade_fixture(cascade_net):
    # S2 is attached to S1 and S3, not to the generator
    assert not is_star_mode(cascade_net)


def test_star_mode_false_for_two_generators():
    spec = star_network(["S1"], ["R1"], [("S1", "R1"), ("R1", "S1")])
    extra = NetworkSpec.build(
        spec.nodes + (NodeRef("G2", Side.POWER, Kind.SOURCE),),
        spec.intra_edges,
        spec.dep_edges,
    )
    assert validate(extra) == []
    assert not is_star_mode(extra)


def test_projection_six_cycle(six_cycle):
    g = project_dependency_digraph(six_cycle)
    assert g.nodes == ("R1", "R2", "R3", "S1", "S2", "S3")
    assert len(g.arcs) == 6
    assert all(len(g.succ[v]) == 1 and len(g.pred[v]) == 1 for v in g.nodes)
    # following successors from S1 visits all six nodes before returning
    v, seen = "S1", []
    for _ in range(6):
        seen.append(v)
        v = g.succ[v][0]
    assert v == "S1" and seen == ["S1", "R1", "S2", "R2", "S3", "R3"]


def test_projection_bidirectional_pair():
    spec = star_network(["S1"], ["R1"], [("S1", "R1")], Mode.BIDIRECTIONAL)
    assert project_dependency_digraph(spec).arcs == (("R1", "S1"), ("S1", "R1"))


def test_projection_rejects_non_star(cascade_net):
    with pytest.raises(NotStarError):
        project_dependency_digraph(cascade_net)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 7), seed=st.integers(0, 2**32), bi=st.booleans())
def test_round_trip_and_bipartite(n, seed, bi):
    spec = gen_cycle_sampled(GenConfig(n, 6, seed))
    if bi:
        spec = to_bidirectional(spec)
    again = parse_network(serialize_network(spec))
    assert again == spec
    assert serialize_network(again) == serialize_network(spec)
    g = project_dependency_digraph(spec)
    assert all(g.side_of[a] is not g.side_of[b] for a, b in g.arcs)
    if bi:
        arcs = set(g.arcs)
        assert all((b, a) in arcs for a, b in arcs)


def test_serializer_writes_pairs_power_first(six_cycle_bi):
    d = json.loads(serialize_network(six_cycle_bi))
    assert len(d["dep_edges"]) == 6
    assert all(a.startswith("S") and b.startswith("R") for a, b in d["dep_edges"])


def test_round_trip_non_star(cascade_net):
    assert parse_network(serialize_network(cascade_net)) == cascade_net
