"""Edge-sampling distributions over the static projection and local
enumeration of template copies around a sampled edge."""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .motifs import TargetTemplate
from .netio import StaticProjection

DISTRIBUTIONS = ("uniform", "static-degree", "temporal-degree", "temporal-weight")


@dataclass(frozen=True)
class SamplingDistribution:
    kind: str
    prob: np.ndarray
    cumulative: list[float]

    def __len__(self) -> int:
        return len(self.prob)


def _temporal_degree_scores(proj: StaticProjection) -> np.ndarray:
    # score({x,y}) = |distinct t on edges touching x|
    #            + |distinct t on edges touching y whose other endpoint is not x|
    node_times: list[set] = [set() for _ in range(proj.n)]
    for se in proj.static_edges:
        node_times[se.u].update(se.times)
        node_times[se.v].update(se.times)
    scores = np.empty(proj.num_edges, dtype=np.float64)
    for i, se in enumerate(proj.static_edges):
        x, y = se.u, se.v
        other = set()
        for z, e in proj.adjacency[y].items():
            if z != x:
                other.update(proj.static_edges[e].times)
        scores[i] = len(node_times[x]) + len(other)
    return scores


def build_distribution(proj: StaticProjection, kind: str = "temporal-weight") -> SamplingDistribution:
    if kind == "uniform":
        scores = np.ones(proj.num_edges)
    elif kind == "static-degree":
        deg = proj.degrees
        scores = np.array([deg[se.u] + deg[se.v] for se in proj.static_edges], dtype=np.float64)
    elif kind == "temporal-degree":
        scores = _temporal_degree_scores(proj)
    elif kind == "temporal-weight":
        scores = proj.weights.astype(np.float64)
    else:
        raise ValueError(f"unknown distribution {kind!r}; choose from {DISTRIBUTIONS}")
    prob = scores / scores.sum()
    cum = np.cumsum(prob)
    cum[-1] = 1.0
    return SamplingDistribution(kind, prob, cum.tolist())


def sample_edge(dist: SamplingDistribution, rng: np.random.Generator) -> int:
    """Inverse-CDF draw of a static edge index."""
    i = bisect.bisect_right(dist.cumulative, rng.random())
    return min(i, len(dist.cumulative) - 1)


@dataclass(frozen=True)
class LocalMatchSet:
    anchor: int
    matches: list[tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.matches)

    def __iter__(self):
        return iter(self.matches)


def _triangles(proj: StaticProjection, e: int) -> list[tuple[int, ...]]:
    x, y = proj.endpoints(e)
    ax, ay = proj.adjacency[x], proj.adjacency[y]
    if len(ax) > len(ay):
        ax, ay = ay, ax
    out = []
    for z, e1 in ax.items():
        e2 = ay.get(z)
        if e2 is not None:
            out.append(tuple(sorted((e, e1, e2))))
    return out


def _squares(proj: StaticProjection, e: int) -> list[tuple[int, ...]]:
    # cycle x - y - v - u - x
    x, y = proj.endpoints(e)
    adj = proj.adjacency
    out = []
    for u, exu in adj[x].items():
        if u == y:
            continue
        au = adj[u]
        for v, eyv in adj[y].items():
            if v == x or v == u:
                continue
            euv = au.get(v)
            if euv is not None:
                out.append(tuple(sorted((e, exu, eyv, euv))))
    return out


def _wedges(proj: StaticProjection, e: int) -> list[tuple[int, ...]]:
    x, y = proj.endpoints(e)
    out = []
    for end, other in ((x, y), (y, x)):
        for z, e2 in proj.adjacency[end].items():
            if z != other:
                out.append(tuple(sorted((e, e2))))
    return out


def _general(proj: StaticProjection, H: TargetTemplate, e: int) -> list[tuple[int, ...]]:
    """Anchor ``e`` on one representative per edge orbit, in both
    orientations, and extend by backtracking over H's remaining nodes."""
    x, y = proj.endpoints(e)
    adj = proj.adjacency
    hadj: list[set[int]] = [set() for _ in range(H.k)]
    for a, b in H.edges:
        hadj[a].add(b)
        hadj[b].add(a)
    found: set[tuple[int, ...]] = set()

    for orbit in H.edge_orbits:
        a, b = orbit[0]
        rest = [v for v in _bfs_order(hadj, a, b)]
        for gx, gy in ((x, y), (y, x)):
            mapping = {a: gx, b: gy}
            _extend(adj, hadj, H, mapping, rest, 0, found)
    return sorted(found)


def _bfs_order(hadj, a, b) -> list[int]:
    order, seen = [], {a, b}
    frontier = [a, b]
    while frontier:
        nxt = []
        for v in frontier:
            for w in sorted(hadj[v]):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    nxt.append(w)
        frontier = nxt
    return order


def _extend(adj, hadj, H, mapping, rest, i, found):
    if i == len(rest):
        found.add(tuple(sorted(adj[mapping[a]][mapping[b]] for a, b in H.edges)))
        return
    v = rest[i]
    mapped_nbrs = [mapping[w] for w in hadj[v] if w in mapping]
    # rest is BFS-ordered, so every node has a mapped neighbour
    anchor = min(mapped_nbrs, key=lambda g: len(adj[g]))
    used = set(mapping.values())
    for g in adj[anchor]:
        if g in used:
            continue
        if all(g in adj[m] for m in mapped_nbrs):
            mapping[v] = g
            _extend(adj, hadj, H, mapping, rest, i + 1, found)
            del mapping[v]


_SPECIALIZED = {"triangle": _triangles, "square": _squares, "path2": _wedges}


def local_enumerate(
    proj: StaticProjection,
    H: TargetTemplate,
    e: int,
    allow_general: bool = True,
) -> LocalMatchSet:
    """All subgraphs of the projection isomorphic to ``H`` containing edge ``e``,
    each given as a sorted tuple of static edge indices."""
    if H.name == "edge":
        return LocalMatchSet(e, [(e,)])
    fn = _SPECIALIZED.get(H.name)
    if fn is not None:
        return LocalMatchSet(e, fn(proj, e))
    if not allow_general:
        raise ValueError(f"no specialised enumerator for template {H.name!r}")
    return LocalMatchSet(e, _general(proj, H, e))


def enumerate_all(proj: StaticProjection, H: TargetTemplate) -> list[tuple[int, ...]]:
    """Every copy of ``H`` in the projection, once each."""
    out: set[tuple[int, ...]] = set()
    for e in range(proj.num_edges):
        out.update(local_enumerate(proj, H, e).matches)
    return sorted(out)


def static_subgraph_edges(proj: StaticProjection, h: Sequence[int]) -> frozenset[frozenset]:
    return frozenset(frozenset(proj.endpoints(e)) for e in h)
