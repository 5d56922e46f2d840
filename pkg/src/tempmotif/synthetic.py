"""Small synthetic temporal networks for tests and experiments."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .netio import TemporalNetwork


@dataclass
class CommunityNetworkConfig:
    n: int = 50
    m: int = 500
    communities: int = 5
    p_in: float = 0.5
    p_out: float = 0.02
    t_max: int = 10_000
    seed: int = 7


def community_network(cfg: CommunityNetworkConfig | None = None, **overrides) -> TemporalNetwork:
    """Planted-partition static graph; every static edge carries at least one
    temporal edge, the remaining edges are spread uniformly over the
    static edges. Directions and timestamps are uniform."""
    cfg = cfg or CommunityNetworkConfig()
    for k, v in overrides.items():
        setattr(cfg, k, v)
    rng = np.random.default_rng(cfg.seed)
    block = np.arange(cfg.n) % cfg.communities
    pairs = []
    for u in range(cfg.n):
        for v in range(u + 1, cfg.n):
            p = cfg.p_in if block[u] == block[v] else cfg.p_out
            if rng.random() < p:
                pairs.append((u, v))
    if len(pairs) > cfg.m:
        raise ValueError(f"{len(pairs)} static edges do not fit in m={cfg.m}")
    owner = np.concatenate([np.arange(len(pairs)), rng.integers(0, len(pairs), cfg.m - len(pairs))])
    flip = rng.random(cfg.m) < 0.5
    times = rng.integers(0, cfg.t_max, cfg.m)
    edges = []
    for e, f, t in zip(owner.tolist(), flip.tolist(), times.tolist()):
        u, v = pairs[e]
        edges.append((v, u, t) if f else (u, v, t))
    return TemporalNetwork.from_edges(edges, relabel=False)


def benchmark_network(seed: int = 7) -> TemporalNetwork:
    """The 50-node, 500-edge network used by the statistical checks."""
    return community_network(CommunityNetworkConfig(seed=seed))


def planted_motif_network(
    n: int = 30,
    background_m: int = 300,
    triples: int = 6,
    bursts: int = 8,
    t_max: int = 20_000,
    gap: int = 5,
    seed: int = 11,
) -> TemporalNetwork:
    """Sparse random background plus repeated tight bursts of the cyclic
    triangle ``a->b, b->c, c->a`` on a few node triples.

    Bursts on a triple are at least ``t_max / (2 * bursts)`` apart, so with a
    duration bound below that, the planted order is the only ordering of the
    triple's edges that occurs more often than by chance.
    """
    rng = np.random.default_rng(seed)
    edges = []
    for _ in range(background_m):
        u, v = rng.choice(n, size=2, replace=False).tolist()
        edges.append((u, v, int(rng.integers(0, t_max))))
    slot = t_max // bursts
    for _ in range(triples):
        a, b, c = rng.choice(n, size=3, replace=False).tolist()
        for k in range(bursts):
            t = k * slot + int(rng.integers(0, slot // 2))
            edges += [(a, b, t), (b, c, t + gap), (c, a, t + 2 * gap)]
    return TemporalNetwork.from_edges(edges, relabel=False)
