"""Small reference networks used in tests, docs and the CLI ``fixture`` command."""

from __future__ import annotations

from .model import Kind, Mode, NetworkSpec, NodeRef, Side, star_network


def single_failure_network() -> NetworkSpec:
    """Non-star network whose cascade after losing S4 takes three rounds.

    Removing S4 fails R3, then S1, S3 and R2, then R1 and S2.
    """
    P, C = Side.POWER, Side.COMM
    nodes = [NodeRef("G", P, Kind.SOURCE), NodeRef("C", C, Kind.SOURCE)]
    nodes += [NodeRef(f"S{i}", P, Kind.RELAY) for i in range(1, 5)]
    nodes += [NodeRef(f"R{i}", C, Kind.RELAY) for i in range(1, 4)]
    intra = [("G", "S1"), ("G", "S3"), ("G", "S4"), ("S1", "S2"), ("S2", "S3"),
             ("C", "R1"), ("C", "R3"), ("R3", "R2")]
    deps = [("S4", "R3"), ("S1", "R1"), ("S2", "R2"), ("R3", "S1"),
            ("R3", "S3"), ("R1", "S2"), ("R2", "S4")]
    return NetworkSpec.build(nodes, intra, deps, Mode.UNIDIRECTIONAL)


def power_only_network() -> NetworkSpec:
    """The power grid of :func:`single_failure_network` with control always available.

    A stub router ``Rc`` (powered by stub substation ``Sc``) controls every
    substation, so only loss of a path to the generator can fail a substation.
    """
    P, C = Side.POWER, Side.COMM
    nodes = [NodeRef("G", P, Kind.SOURCE), NodeRef("C", C, Kind.SOURCE)]
    nodes += [NodeRef(f"S{i}", P, Kind.RELAY) for i in range(1, 5)]
    nodes += [NodeRef("Sc", P, Kind.RELAY), NodeRef("Rc", C, Kind.RELAY)]
    intra = [("G", "S1"), ("G", "S3"), ("G", "S4"), ("S1", "S2"), ("S2", "S3"),
             ("G", "Sc"), ("C", "Rc")]
    deps = [("Rc", s) for s in ("S1", "S2", "S3", "S4", "Sc")] + [("Sc", "Rc")]
    return NetworkSpec.build(nodes, intra, deps, Mode.UNIDIRECTIONAL)


def six_cycle_network(mode: Mode | str = Mode.UNIDIRECTIONAL) -> NetworkSpec:
    """Star network whose dependencies form S1>R1>S2>R2>S3>R3>S1."""
    arcs = [("S1", "R1"), ("R1", "S2"), ("S2", "R2"), ("R2", "S3"), ("S3", "R3"), ("R3", "S1")]
    return star_network(["S1", "S2", "S3"], ["R1", "R2", "R3"], arcs, mode)


FIXTURES = {
    "single-failure": single_failure_network,
    "power-only": power_only_network,
    "six-cycle": six_cycle_network,
    "six-cycle-bi": lambda: six_cycle_network(Mode.BIDIRECTIONAL),
}
