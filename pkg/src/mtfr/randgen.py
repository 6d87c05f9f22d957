"""Seeded random star instances built from short random dependency cycles."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .model import Mode, NetworkSpec, star_network

# Python's random.Random: Mersenne Twister MT19937, seeded from an int.
RNG_ALGORITHM = "MT19937"


@dataclass(frozen=True)
class GenConfig:
    n_per_side: int
    max_cycle_len: int = 6
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_per_side < 1:
            raise ValueError("n_per_side must be >= 1")
        if self.max_cycle_len < 2 or self.max_cycle_len % 2:
            raise ValueError("max_cycle_len must be an even number >= 2")


def derive_seed(base: int, *parts: int) -> int:
    """Stable 64-bit seed from a base seed and integer coordinates."""
    msg = ",".join(str(x) for x in (base, *parts)).encode()
    return int.from_bytes(hashlib.blake2b(msg, digest_size=8).digest(), "big")


def gen_cycle_sampled(cfg: GenConfig) -> NetworkSpec:
    """Add random alternating cycles until every relay has a supporter.

    Cycle lengths are uniform over the even lengths up to ``max_cycle_len``
    that fit in ``2 * n_per_side`` nodes.
    """
    rng = random.Random(cfg.seed)
    n = cfg.n_per_side
    subs = [f"S{i}" for i in range(1, n + 1)]
    routers = [f"R{i}" for i in range(1, n + 1)]
    lengths = list(range(2, min(cfg.max_cycle_len, 2 * n) + 1, 2))
    arcs: set[tuple[str, str]] = set()
    supported: set[str] = set()
    while len(supported) < 2 * n:
        half = rng.choice(lengths) // 2
        s = rng.sample(subs, half)
        r = rng.sample(routers, half)
        for i in range(half):
            arcs.add((s[i], r[i]))
            arcs.add((r[i], s[(i + 1) % half]))
            supported.add(r[i])
            supported.add(s[(i + 1) % half])
    return star_network(subs, routers, arcs)


def to_bidirectional(spec: NetworkSpec) -> NetworkSpec:
    """Same topology with every dependency arc made mutual."""
    deps = set(spec.dep_edges) | {(b, a) for a, b in spec.dep_edges}
    return NetworkSpec.build(spec.nodes, spec.intra_edges, deps, Mode.BIDIRECTIONAL)
