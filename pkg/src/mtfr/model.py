"""Interdependent network data model, topology file format and star projection.

A network has two sides: the power grid (generators and substations) and the
control/communication network (control centers and routers). Generators and
control centers are SOURCE nodes; substations and routers are RELAY nodes.
Intra edges are undirected lines inside one side. Dependency edges are
directed arcs ``(a, b)`` between RELAY nodes of opposite sides meaning
"``b`` is supported by ``a``".
"""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping

from .errors import NotStarError, ParseError


class Side(str, enum.Enum):
    POWER = "power"
    COMM = "comm"

    @property
    def other(self) -> "Side":
        return Side.COMM if self is Side.POWER else Side.POWER


class Kind(str, enum.Enum):
    SOURCE = "source"
    RELAY = "relay"


class Mode(str, enum.Enum):
    UNIDIRECTIONAL = "unidirectional"
    BIDIRECTIONAL = "bidirectional"


@dataclass(frozen=True, order=True)
class NodeRef:
    id: str
    side: Side
    kind: Kind


Edge = tuple[str, str]


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class NetworkSpec:
    """Full interdependent topology.

    Fields are tuples so that an invalid spec (duplicate ids, repeated edges)
    can still be represented and reported by :func:`validate`. Use
    :meth:`build` to get the canonical, sorted form.
    """

    nodes: tuple[NodeRef, ...]
    intra_edges: tuple[Edge, ...]
    dep_edges: tuple[Edge, ...]
    mode: Mode = Mode.UNIDIRECTIONAL

    @classmethod
    def build(
        cls,
        nodes: Iterable[NodeRef],
        intra_edges: Iterable[Edge],
        dep_edges: Iterable[Edge],
        mode: Mode | str = Mode.UNIDIRECTIONAL,
    ) -> "NetworkSpec":
        """Canonical constructor: sorts nodes by id, intra endpoints and edge lists."""
        mode = Mode(mode)
        intra = sorted(tuple(sorted((a, b))) for a, b in intra_edges)
        deps = sorted((a, b) for a, b in dep_edges)
        return cls(
            nodes=tuple(sorted(nodes, key=lambda n: n.id)),
            intra_edges=tuple(intra),  # type: ignore[arg-type]
            dep_edges=tuple(deps),
            mode=mode,
        )

    @cached_property
    def node_map(self) -> dict[str, NodeRef]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def relays(self) -> tuple[str, ...]:
        return tuple(sorted(n.id for n in self.nodes if n.kind is Kind.RELAY))

    @cached_property
    def sources(self) -> tuple[str, ...]:
        return tuple(sorted(n.id for n in self.nodes if n.kind is Kind.SOURCE))

    def side_of(self, node_id: str) -> Side:
        return self.node_map[node_id].side

    def relays_on(self, side: Side) -> tuple[str, ...]:
        nm = self.node_map
        return tuple(r for r in self.relays if nm[r].side is side)

    @property
    def is_bidirectional(self) -> bool:
        return self.mode is Mode.BIDIRECTIONAL

    def dependency_pairs(self) -> tuple[Edge, ...]:
        """Unordered dependency pairs, POWER-side id first, sorted."""
        pairs = set()
        nm = self.node_map
        for a, b in self.dep_edges:
            pairs.add((a, b) if nm[a].side is Side.POWER else (b, a))
        return tuple(sorted(pairs))


@dataclass(frozen=True)
class DepDigraph:
    """Bipartite dependency digraph over RELAY nodes."""

    nodes: tuple[str, ...]
    arcs: tuple[Edge, ...]
    side_of: Mapping[str, Side] = field(compare=False)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.nodes)}

    @cached_property
    def succ(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {v: [] for v in self.nodes}
        for a, b in self.arcs:
            out[a].append(b)
        for v in out:
            out[v].sort()
        return out

    @cached_property
    def pred(self) -> dict[str, list[str]]:
        inn: dict[str, list[str]] = {v: [] for v in self.nodes}
        for a, b in self.arcs:
            inn[b].append(a)
        for v in inn:
            inn[v].sort()
        return inn

    def is_symmetric(self) -> bool:
        arcs = set(self.arcs)
        return all((b, a) in arcs for a, b in arcs)

    def with_arcs(self, arcs: Iterable[Edge]) -> "DepDigraph":
        return DepDigraph(self.nodes, tuple(sorted(arcs)), self.side_of)


# ---------------------------------------------------------------------------
# validation


def validate(spec: NetworkSpec) -> list[Violation]:
    """Return every invariant violation of ``spec`` (empty list means valid)."""
    out: list[Violation] = []
    counts = Counter(n.id for n in spec.nodes)
    for node_id, c in sorted(counts.items()):
        if c > 1:
            out.append(Violation("DUPLICATE_ID", f"node id {node_id!r} appears {c} times"))
    nm = {n.id: n for n in spec.nodes}

    seen_intra: set[frozenset[str]] = set()
    for a, b in spec.intra_edges:
        label = f"intra edge {a}-{b}"
        if a not in nm or b not in nm:
            out.append(Violation("UNKNOWN_NODE", f"{label} references an unknown node"))
            continue
        if a == b:
            out.append(Violation("SELF_LOOP", f"{label} is a self-loop"))
            continue
        key = frozenset((a, b))
        if key in seen_intra:
            out.append(Violation("DUPLICATE_EDGE", f"{label} is listed more than once"))
        seen_intra.add(key)
        if nm[a].side is not nm[b].side:
            out.append(Violation("CROSS_SIDE_INTRA", f"{label} joins different sides"))

    seen_dep: set[Edge] = set()
    for a, b in spec.dep_edges:
        label = f"dependency edge {a}->{b}"
        if a not in nm or b not in nm:
            out.append(Violation("UNKNOWN_NODE", f"{label} references an unknown node"))
            continue
        if a == b:
            out.append(Violation("SELF_LOOP", f"{label} is a self-loop"))
            continue
        if (a, b) in seen_dep:
            out.append(Violation("DUPLICATE_EDGE", f"{label} is listed more than once"))
        seen_dep.add((a, b))
        if nm[a].kind is Kind.SOURCE or nm[b].kind is Kind.SOURCE:
            out.append(Violation("SOURCE_IN_DEP", f"{label} touches a SOURCE node"))
        if nm[a].side is nm[b].side:
            out.append(Violation("SAME_SIDE_DEP", f"{label} joins two {nm[a].side.value} nodes"))

    if spec.mode is Mode.BIDIRECTIONAL:
        for a, b in sorted(seen_dep):
            if (b, a) not in seen_dep:
                out.append(
                    Violation("ASYMMETRIC_DEP", f"dependency edge {a}->{b} has no reverse {b}->{a}")
                )
    return out


def is_star_mode(spec: NetworkSpec) -> bool:
    """True iff each side is a star around its single SOURCE."""
    center: dict[Side, str] = {}
    for side in Side:
        srcs = [n.id for n in spec.nodes if n.side is side and n.kind is Kind.SOURCE]
        if len(srcs) != 1:
            return False
        center[side] = srcs[0]
    incident: dict[str, list[str]] = {r: [] for r in spec.relays}
    for a, b in spec.intra_edges:
        if a in incident:
            incident[a].append(b)
        if b in incident:
            incident[b].append(a)
    nm = spec.node_map
    return all(
        len(nbrs) == 1 and nbrs[0] == center[nm[r].side] for r, nbrs in incident.items()
    )


def project_dependency_digraph(spec: NetworkSpec) -> DepDigraph:
    if not is_star_mode(spec):
        raise NotStarError("network is not in star mode (one source per side, relays attached only to it)")
    return dependency_digraph(spec)


def dependency_digraph(spec: NetworkSpec) -> DepDigraph:
    """Dependency digraph without the star-mode check."""
    side_of = {r: spec.side_of(r) for r in spec.relays}
    return DepDigraph(spec.relays, tuple(sorted(set(spec.dep_edges))), side_of)


# ---------------------------------------------------------------------------
# topology file format


def _schema(msg: str) -> ParseError:
    return ParseError(msg, code="SCHEMA")


def _edge_list(doc: Mapping[str, Any], key: str) -> list[Edge]:
    raw = doc.get(key)
    if not isinstance(raw, list):
        raise _schema(f"field {key!r} must be a list")
    edges = []
    for item in raw:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, str) for x in item)
        ):
            raise _schema(f"entries of {key!r} must be [id, id] string pairs, got {item!r}")
        edges.append((item[0], item[1]))
    return edges


def from_document(doc: Any, *, symmetrize: bool = True) -> NetworkSpec:
    """Build a validated spec from an already-decoded JSON document."""
    if not isinstance(doc, dict):
        raise _schema("top-level value must be an object")
    for key in ("mode", "nodes", "intra_edges", "dep_edges"):
        if key not in doc:
            raise _schema(f"missing field {key!r}")
    try:
        mode = Mode(doc["mode"])
    except ValueError:
        raise _schema(f"bad mode {doc['mode']!r}") from None
    if not isinstance(doc["nodes"], list):
        raise _schema("field 'nodes' must be a list")
    nodes = []
    for item in doc["nodes"]:
        if not isinstance(item, dict):
            raise _schema(f"node entries must be objects, got {item!r}")
        for key in ("id", "side", "kind"):
            if key not in item:
                raise _schema(f"node entry {item!r} is missing {key!r}")
        if not isinstance(item["id"], str) or not item["id"]:
            raise _schema(f"node id must be a non-empty string, got {item['id']!r}")
        try:
            nodes.append(NodeRef(item["id"], Side(item["side"]), Kind(item["kind"])))
        except ValueError as exc:
            raise _schema(f"node {item['id']!r}: {exc}") from None
    intra = _edge_list(doc, "intra_edges")
    deps = _edge_list(doc, "dep_edges")
    if mode is Mode.BIDIRECTIONAL and symmetrize:
        deps = sorted(set(deps) | {(b, a) for a, b in deps})

    spec = NetworkSpec(
        nodes=tuple(sorted(nodes, key=lambda n: n.id)),
        intra_edges=tuple(intra),
        dep_edges=tuple(deps),
        mode=mode,
    )
    problems = validate(spec)
    if problems:
        raise ParseError("; ".join(p.message for p in problems), code="INVARIANT")
    return NetworkSpec.build(spec.nodes, spec.intra_edges, spec.dep_edges, mode)


def parse_network(text: str, *, symmetrize: bool = True) -> NetworkSpec:
    """Parse a topology document.

    In bidirectional files each dependency pair may be listed once; with
    ``symmetrize=False`` the arcs are taken literally and a missing reverse
    arc is an INVARIANT error.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}", code="SYNTAX") from None
    return from_document(doc, symmetrize=symmetrize)


def to_document(spec: NetworkSpec) -> dict[str, Any]:
    spec = NetworkSpec.build(spec.nodes, spec.intra_edges, spec.dep_edges, spec.mode)
    if spec.is_bidirectional:
        deps = [list(p) for p in spec.dependency_pairs()]
    else:
        deps = [list(e) for e in spec.dep_edges]
    return {
        "mode": spec.mode.value,
        "nodes": [{"id": n.id, "side": n.side.value, "kind": n.kind.value} for n in spec.nodes],
        "intra_edges": [list(e) for e in spec.intra_edges],
        "dep_edges": deps,
    }


def serialize_network(spec: NetworkSpec) -> str:
    return json.dumps(to_document(spec), indent=2) + "\n"


def load_network(path: str) -> NetworkSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read())


def save_network(spec: NetworkSpec, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_network(spec))


def star_network(
    power: Iterable[str],
    comm: Iterable[str],
    dep_edges: Iterable[Edge],
    mode: Mode | str = Mode.UNIDIRECTIONAL,
    *,
    generator: str = "G",
    control_center: str = "C",
) -> NetworkSpec:
    """Convenience builder for star-mode specs.

    In bidirectional mode ``dep_edges`` may list each pair once.
    """
    power, comm = list(power), list(comm)
    nodes = [NodeRef(generator, Side.POWER, Kind.SOURCE), NodeRef(control_center, Side.COMM, Kind.SOURCE)]
    nodes += [NodeRef(s, Side.POWER, Kind.RELAY) for s in power]
    nodes += [NodeRef(r, Side.COMM, Kind.RELAY) for r in comm]
    intra = [(generator, s) for s in power] + [(control_center, r) for r in comm]
    deps = set(dep_edges)
    mode = Mode(mode)
    if mode is Mode.BIDIRECTIONAL:
        deps |= {(b, a) for a, b in deps}
    return NetworkSpec.build(nodes, intra, deps, mode)
