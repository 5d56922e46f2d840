"""Temporal edge-list ingestion and the undirected static projection."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

log = logging.getLogger(__name__)


class ParseError(ValueError):
    """Raised for malformed or empty edge-list input."""


class TemporalEdge(NamedTuple):
    src: int
    dst: int
    t: int


@dataclass(frozen=True)
class TemporalNetwork:
    """Directed timestamped edges, sorted by (t, input index).

    Node ids are dense ``0..n-1``; ``labels[i]`` is the original id of node ``i``.
    ``order[i]`` is the input line index of the i-th sorted edge.
    """

    n: int
    src: np.ndarray
    dst: np.ndarray
    t: np.ndarray
    labels: np.ndarray
    order: np.ndarray
    self_loops_dropped: int = 0
    duplicates_dropped: int = 0

    @property
    def m(self) -> int:
        return len(self.t)

    @property
    def edges(self) -> list[TemporalEdge]:
        return [TemporalEdge(int(a), int(b), int(c)) for a, b, c in zip(self.src, self.dst, self.t)]

    def __len__(self) -> int:
        return self.m

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int, int]],
        relabel: bool = True,
        dedup: bool = False,
    ) -> "TemporalNetwork":
        """Build from (src, dst, t) triples given in input order.

        With ``relabel`` the node ids are densely remapped in increasing order of
        the original ids; otherwise ids must already be non-negative integers and
        ``n = max id + 1``.
        """
        src, dst, ts = [], [], []
        loops = dups = 0
        seen = set()
        for a, b, t in edges:
            if a == b:
                loops += 1
                continue
            if dedup:
                if (a, b, t) in seen:
                    dups += 1
                    continue
                seen.add((a, b, t))
            src.append(a)
            dst.append(b)
            ts.append(t)
        if not ts:
            raise ParseError("temporal network has no edges")
        src_a = np.asarray(src, dtype=np.int64)
        dst_a = np.asarray(dst, dtype=np.int64)
        t_a = np.asarray(ts, dtype=np.int64)
        if (src_a < 0).any() or (dst_a < 0).any() or (t_a < 0).any():
            raise ParseError("node ids and timestamps must be non-negative")
        if relabel:
            labels, inv = np.unique(np.concatenate([src_a, dst_a]), return_inverse=True)
            src_a, dst_a = inv[: len(src_a)].astype(np.int64), inv[len(src_a):].astype(np.int64)
            n = len(labels)
        else:
            n = int(max(src_a.max(), dst_a.max())) + 1
            labels = np.arange(n, dtype=np.int64)
        order = np.argsort(t_a, kind="stable")
        if loops:
            log.warning("dropped %d self-loop edge(s)", loops)
        return cls(
            n=n,
            src=src_a[order],
            dst=dst_a[order],
            t=t_a[order],
            labels=labels,
            order=order.astype(np.int64),
            self_loops_dropped=loops,
            duplicates_dropped=dups,
        )


def load_temporal_network(
    lines: Iterable[str],
    dedup: bool = False,
    time_scale: float | None = None,
) -> TemporalNetwork:
    """Parse ``src dst t`` lines ('#' comments and blank lines ignored).

    Timestamps must be integers unless ``time_scale`` is given, in which case
    they are parsed as reals and stored as ``round(t * time_scale)``.
    """
    triples = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 3:
            raise ParseError(f"line {lineno}: expected 'src dst t', got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
            if time_scale is None:
                t = int(parts[2])
            else:
                t = int(round(float(parts[2]) * time_scale))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if a < 0 or b < 0 or t < 0:
            raise ParseError(f"line {lineno}: negative value in {line!r}")
        triples.append((a, b, t))
    if not triples:
        raise ParseError("empty input: no edges found")
    return TemporalNetwork.from_edges(triples, relabel=True, dedup=dedup)


def read_temporal_network(path, dedup: bool = False, time_scale: float | None = None) -> TemporalNetwork:
    with open(path) as fh:
        return load_temporal_network(fh, dedup=dedup, time_scale=time_scale)


@dataclass(frozen=True)
class StaticEdge:
    """Undirected edge ``{u, v}`` (u < v) with the temporal edges projecting on it."""

    u: int
    v: int
    positions: tuple[int, ...]
    forward: tuple[bool, ...]
    times: tuple[int, ...]

    @property
    def weight(self) -> int:
        return len(self.positions)

    @property
    def timeline(self) -> list[tuple[bool, int]]:
        """(direction flag, t) pairs; the flag is True for u->v."""
        return list(zip(self.forward, self.times))


@dataclass
class StaticProjection:
    network: TemporalNetwork
    static_edges: list[StaticEdge]
    adjacency: list[dict[int, int]]
    # per static edge: [(position, TemporalEdge), ...] ready for merging
    _timelines: list[list[tuple[int, TemporalEdge]]] = field(repr=False, default_factory=list)
    _index: dict[tuple[int, int], int] = field(repr=False, default_factory=dict)

    @property
    def n(self) -> int:
        return self.network.n

    @property
    def m(self) -> int:
        return self.network.m

    @property
    def num_edges(self) -> int:
        return len(self.static_edges)

    @property
    def weights(self) -> np.ndarray:
        return np.array([e.weight for e in self.static_edges], dtype=np.int64)

    @property
    def alpha(self) -> int:
        return int(self.weights.min())

    @property
    def wmax(self) -> int:
        return int(self.weights.max())

    @property
    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    @property
    def dmax(self) -> int:
        return int(self.degrees.max())

    def neighbors(self, x: int) -> list[int]:
        return sorted(self.adjacency[x])

    def edge_index(self, x: int, y: int) -> int | None:
        """Index of static edge {x, y}, or None."""
        return self.adjacency[x].get(y)

    def endpoints(self, e: int) -> tuple[int, int]:
        se = self.static_edges[e]
        return se.u, se.v

    def static_edge_of(self, pos: int) -> int:
        """Static edge index of the temporal edge at sorted position ``pos``."""
        net = self.network
        a, b = int(net.src[pos]), int(net.dst[pos])
        return self.adjacency[a][b]


def project_static(T: TemporalNetwork) -> StaticProjection:
    index: dict[tuple[int, int], int] = {}
    buckets: list[list[int]] = []
    src, dst, ts = T.src.tolist(), T.dst.tolist(), T.t.tolist()
    for pos, (a, b) in enumerate(zip(src, dst)):
        key = (a, b) if a < b else (b, a)
        e = index.get(key)
        if e is None:
            e = index[key] = len(buckets)
            buckets.append([])
        buckets[e].append(pos)

    adjacency: list[dict[int, int]] = [dict() for _ in range(T.n)]
    static_edges, timelines = [], []
    for (u, v), e in index.items():
        pos = buckets[e]
        static_edges.append(StaticEdge(
            u=u,
            v=v,
            positions=tuple(pos),
            forward=tuple(src[p] == u for p in pos),
            times=tuple(ts[p] for p in pos),
        ))
        timelines.append([(p, TemporalEdge(src[p], dst[p], ts[p])) for p in pos])
        adjacency[u][v] = e
        adjacency[v][u] = e
    return StaticProjection(T, static_edges, adjacency, timelines, index)


def temporal_subgraph(proj: StaticProjection, h: Sequence[int]) -> list[TemporalEdge]:
    """Temporal edges of the static edges ``h``, merged into global sorted order."""
    if not h:
        raise ValueError("temporal_subgraph needs at least one static edge")
    tl = proj._timelines
    if len(h) == 1:
        return [te for _, te in tl[h[0]]]
    merged = []
    for e in h:
        merged.extend(tl[e])
    merged.sort(key=_first)
    return [te for _, te in merged]


def _first(item):
    return item[0]
