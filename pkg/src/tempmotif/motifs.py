"""Temporal motifs, their canonical packed encoding, and target templates."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Hashable, Iterable, Sequence

KEY_WIDTH = 128

Pair = tuple[Hashable, Hashable]


class EncodingTooWide(ValueError):
    pass


def node_bits(k: int) -> int:
    return max(1, math.ceil(math.log2(k + 1)))


@dataclass(frozen=True, order=True)
class MotifEncoding:
    """Canonical form of a temporal motif.

    ``code`` packs the 0-based first-appearance ids of ``x1 y1 ... xl yl``,
    ``node_bits(k)`` bits each, most significant first. Two motifs share an
    encoding iff a vertex bijection maps one edge sequence onto the other.
    """

    k: int
    ell: int
    code: int

    @property
    def ids(self) -> tuple[int, ...]:
        b = node_bits(self.k)
        mask = (1 << b) - 1
        n = 2 * self.ell
        return tuple((self.code >> (b * (n - 1 - i))) & mask for i in range(n))

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        ids = self.ids
        return tuple((ids[2 * i], ids[2 * i + 1]) for i in range(self.ell))

    @property
    def display(self) -> str:
        """1-based digit string, e.g. ``121323``."""
        sep = "" if self.k < 10 else "."
        return sep.join(str(i + 1) for i in self.ids)

    @property
    def edge_seq(self) -> str:
        return "".join(f"({a + 1},{b + 1})" for a, b in self.pairs)

    def __str__(self) -> str:
        return self.display

    @classmethod
    def from_display(cls, text: str) -> "MotifEncoding":
        if "." in text:
            digits = [int(d) - 1 for d in text.split(".")]
        else:
            digits = [int(d) - 1 for d in text]
        if len(digits) % 2:
            raise ValueError(f"odd-length motif string {text!r}")
        return canonical_encoding(list(zip(digits[0::2], digits[1::2])))


def canonical_encoding(seq: Sequence[Pair]) -> MotifEncoding:
    """Relabel nodes by first appearance and pack the resulting ids."""
    ids: dict = {}
    flat = []
    for x, y in seq:
        if x == y:
            raise ValueError(f"self-pair {(x, y)!r} in motif")
        for node in (x, y):
            i = ids.get(node)
            if i is None:
                i = ids[node] = len(ids)
            flat.append(i)
    k, ell = len(ids), len(seq)
    b = node_bits(k)
    if 2 * b * ell > KEY_WIDTH:
        raise EncodingTooWide(
            f"template too large for packed encoding: {2 * b * ell} bits > {KEY_WIDTH}"
        )
    code = 0
    for i in flat:
        code = (code << b) | i
    return MotifEncoding(k, ell, code)


@dataclass(frozen=True)
class TemporalMotif:
    edge_seq: tuple[tuple[int, int], ...]

    def __post_init__(self):
        nodes = {v for p in self.edge_seq for v in p}
        if any(x == y for x, y in self.edge_seq):
            raise ValueError("motif edges must join distinct nodes")
        if nodes != set(range(len(nodes))):
            raise ValueError("motif node ids must be exactly 0..k-1")
        if not _connected(underlying_undirected(self.edge_seq)):
            raise ValueError("motif must be weakly connected")

    @property
    def k(self) -> int:
        return len({v for p in self.edge_seq for v in p})

    @property
    def ell(self) -> int:
        return len(self.edge_seq)

    @property
    def encoding(self) -> MotifEncoding:
        return canonical_encoding(self.edge_seq)

    @classmethod
    def from_encoding(cls, enc: MotifEncoding) -> "TemporalMotif":
        return cls(enc.pairs)


def underlying_undirected(seq: Iterable[Pair]) -> frozenset[frozenset]:
    """Undirected simple edge set, collapsing direction and multiplicity."""
    if isinstance(seq, TemporalMotif):
        seq = seq.edge_seq
    return frozenset(frozenset(p) for p in seq)


def _connected(edges: Iterable[frozenset]) -> bool:
    adj: dict = {}
    for e in edges:
        a, b = tuple(e)
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    if not adj:
        return False
    start = next(iter(adj))
    seen, stack = {start}, [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def _relabel(edges: Iterable[frozenset]) -> tuple[int, tuple[tuple[int, int], ...]]:
    nodes = sorted({v for e in edges for v in e}, key=repr)
    ix = {v: i for i, v in enumerate(nodes)}
    out = tuple(sorted(tuple(sorted((ix[a], ix[b]))) for a, b in (tuple(e) for e in edges)))
    return len(nodes), out


@lru_cache(maxsize=65536)
def _isomorphic(k1: int, e1: tuple, k2: int, e2: tuple) -> bool:
    if k1 != k2 or len(e1) != len(e2):
        return False
    deg1 = sorted(sum(v in e for e in e1) for v in range(k1))
    deg2 = sorted(sum(v in e for e in e2) for v in range(k2))
    if deg1 != deg2:
        return False
    target = set(e2)
    for perm in itertools.permutations(range(k2)):
        if all(tuple(sorted((perm[a], perm[b]))) in target for a, b in e1):
            return True
    return False


@dataclass(frozen=True)
class TargetTemplate:
    """Simple connected undirected graph on nodes ``0..k-1``."""

    name: str
    k: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = tuple(sorted({tuple(sorted(e)) for e in self.edges}))
        if len(norm) != len(self.edges):
            raise ValueError("template edges must be distinct")
        if any(a == b for a, b in norm):
            raise ValueError("template has a self-loop")
        if {v for e in norm for v in e} != set(range(self.k)):
            raise ValueError("template nodes must be exactly 0..k-1 with no isolated nodes")
        if not _connected(frozenset(e) for e in norm):
            raise ValueError("template must be connected")
        object.__setattr__(self, "edges", norm)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def automorphisms(self) -> list[tuple[int, ...]]:
        es = set(self.edges)
        return [
            p for p in itertools.permutations(range(self.k))
            if all(tuple(sorted((p[a], p[b]))) in es for a, b in self.edges)
        ]

    @cached_property
    def edge_orbits(self) -> list[list[tuple[int, int]]]:
        remaining = list(self.edges)
        orbits = []
        while remaining:
            a, b = remaining[0]
            orbit = sorted({tuple(sorted((p[a], p[b]))) for p in self.automorphisms})
            orbits.append(orbit)
            remaining = [e for e in remaining if e not in orbit]
        return orbits

    @cached_property
    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(sum(v in e for e in self.edges) for v in range(self.k)))

    @classmethod
    def from_edge_list(cls, edges: Iterable[tuple[Hashable, Hashable]], name: str = "custom") -> "TargetTemplate":
        edges = list(edges)
        nodes = []
        for a, b in edges:
            for v in (a, b):
                if v not in nodes:
                    nodes.append(v)
        ix = {v: i for i, v in enumerate(nodes)}
        return cls(name, len(nodes), tuple((ix[a], ix[b]) for a, b in edges))

    @classmethod
    def read(cls, path) -> "TargetTemplate":
        edges = []
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    a, b = line.split()[:2]
                    edges.append((a, b))
        return cls.from_edge_list(edges, name=f"file:{path}")


EDGE = TargetTemplate("edge", 2, ((0, 1),))
PATH2 = TargetTemplate("path2", 3, ((0, 1), (1, 2)))
TRIANGLE = TargetTemplate("triangle", 3, ((0, 1), (1, 2), (0, 2)))
SQUARE = TargetTemplate("square", 4, ((0, 1), (1, 2), (2, 3), (0, 3)))

BUILTIN_TEMPLATES = {t.name: t for t in (EDGE, PATH2, TRIANGLE, SQUARE)}
BUILTIN_TEMPLATES["wedge"] = PATH2


def get_template(spec: str) -> TargetTemplate:
    if spec.startswith("file:"):
        return TargetTemplate.read(spec[5:])
    try:
        return BUILTIN_TEMPLATES[spec]
    except KeyError:
        raise ValueError(f"unknown template {spec!r}") from None


def topology_matches(motif, H: TargetTemplate) -> bool:
    """True iff the undirected collapse of ``motif`` is isomorphic to ``H``.

    ``motif`` may be a TemporalMotif, a sequence of pairs, or an undirected edge set.
    """
    if isinstance(motif, TemporalMotif):
        und = underlying_undirected(motif.edge_seq)
    elif isinstance(motif, frozenset):
        und = motif
    else:
        und = underlying_undirected(motif)
    if len(und) != H.num_edges:
        return False
    deg: dict = {}
    for e in und:
        for v in e:
            deg[v] = deg.get(v, 0) + 1
    if len(deg) != H.k:
        return False
    name = H.name
    if name == "edge":
        return True
    if name == "triangle":
        # 3 nodes and 3 distinct edges on them is K3
        return True
    if name == "path2":
        return _connected(und)
    if name == "square":
        return all(d == 2 for d in deg.values())
    if tuple(sorted(deg.values())) != H.degree_sequence or not _connected(und):
        return False
    k, rel = _relabel(und)
    return _isomorphic(k, rel, H.k, H.edges)


@dataclass(frozen=True)
class MotifClass:
    template: TargetTemplate
    ell: int
    members: frozenset[MotifEncoding]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, enc) -> bool:
        return enc in self.members

    def sorted(self) -> list[MotifEncoding]:
        return sorted(self.members)


def enumerate_motif_class(
    H: TargetTemplate,
    ell: int,
    max_members: int = 10**6,
    max_candidates: int = 10**8,
) -> MotifClass:
    """All pairwise-distinct ell-edge temporal motifs whose collapse is H.

    Candidates are the sequences over the directed versions of the template edges that
    use every undirected template edge at least once.
    """
    eh = H.num_edges
    if ell < eh:
        raise ValueError(f"ell={ell} is smaller than the template edge count {eh}")
    if (2 * eh) ** ell > max_candidates:
        raise ValueError(f"motif class too large to enumerate: {(2 * eh) ** ell} candidates")
    directed = [(a, b) for a, b in H.edges] + [(b, a) for a, b in H.edges]
    und = [i % eh for i in range(2 * eh)]
    members = set()
    for combo in itertools.product(range(2 * eh), repeat=ell):
        if len({und[i] for i in combo}) != eh:
            continue
        members.add(canonical_encoding([directed[i] for i in combo]))
        if len(members) > max_members:
            raise ValueError(f"motif class exceeds {max_members} members")
    return MotifClass(H, ell, frozenset(members))
