"""Windowed subsequence counting over a candidate temporal sequence and the
weighted accumulation of motif estimates."""

from __future__ import annotations

import math
from collections import defaultdict
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .motifs import MotifEncoding, TargetTemplate, canonical_encoding, topology_matches
from .netio import TemporalEdge

KEY_BITS = 64
DENSE_MAX_BITS = 20


def id_bits(num_ids: int) -> int:
    """Bits per edge id: ceil(log2(num_ids)), at least 1."""
    return max(1, math.ceil(math.log2(num_ids)))


def prune(times: Sequence[int], ell: int, delta: int) -> bool:
    """True when no ``ell`` consecutive edges fit within ``delta``."""
    for i in range(len(times) - ell + 1):
        if times[i + ell - 1] - times[i] <= delta:
            return False
    return True


class WindowCounts:
    """Counts of in-window edge-id subsequences, keyed by packed id strings.

    Level ``L`` holds keys of length ``L``; key ``(k << b) | z`` extends ``k``
    with id ``z``. Keys of length ``ell`` are never decremented and so
    accumulate all ``ell``-subsequences that fit in a window.
    """

    def __init__(self, ell: int, b: int, dense: bool | None = None):
        if ell * b > KEY_BITS:
            raise ValueError(f"sequence key needs {ell * b} bits, more than {KEY_BITS}")
        self.ell = ell
        self.b = b
        self.radix = 1 << b
        self.dense = ell * b <= DENSE_MAX_BITS if dense is None else dense
        if self.dense:
            self.levels = [None] + [np.zeros(1 << (b * L), dtype=np.int64) for L in range(1, ell + 1)]
        else:
            self.levels = [None] + [defaultdict(int) for _ in range(ell)]

    def increment(self, id_: int) -> None:
        levels, b = self.levels, self.b
        # longest keys first, so each extension reads the pre-update count
        if self.dense:
            r = self.radix
            for L in range(self.ell - 1, 0, -1):
                levels[L + 1].reshape(-1, r)[:, id_] += levels[L]
        else:
            for L in range(self.ell - 1, 0, -1):
                nxt = levels[L + 1]
                for k, c in levels[L].items():
                    if c:
                        nxt[(k << b) | id_] += c
        levels[1][id_] += 1

    def decrement(self, id_: int) -> None:
        levels, b = self.levels, self.b
        if self.ell == 1:
            # the only level is the length-ell accumulator
            return
        levels[1][id_] -= 1
        # shortest keys first, so each prefix removal reads the post-update count
        if self.dense:
            r = self.radix
            for L in range(1, self.ell - 1):
                levels[L + 1].reshape(r, -1)[id_, :] -= levels[L]
        else:
            for L in range(1, self.ell - 1):
                nxt = levels[L + 1]
                base = id_ << (L * b)
                for k, c in levels[L].items():
                    if c:
                        nxt[base | k] -= c

    def pack(self, ids: Sequence[int]) -> int:
        key = 0
        for z in ids:
            key = (key << self.b) | z
        return key

    def unpack(self, key: int, length: int) -> tuple[int, ...]:
        mask = self.radix - 1
        return tuple((key >> (self.b * (length - 1 - i))) & mask for i in range(length))

    def get(self, ids: Sequence[int]) -> int:
        return int(self.levels[len(ids)][self.pack(ids)])

    def nonzero(self, length: int) -> dict[tuple[int, ...], int]:
        level = self.levels[length]
        if self.dense:
            keys = np.flatnonzero(level)
            return {self.unpack(int(k), length): int(level[k]) for k in keys}
        return {self.unpack(k, length): c for k, c in level.items() if c}

    def min_count(self) -> int:
        lows = []
        for level in self.levels[1:]:
            if self.dense:
                lows.append(int(level.min()))
            else:
                lows.append(min(level.values(), default=0))
        return min(lows)


def _pattern(pairs: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    ix: dict[int, int] = {}
    out = []
    for x, y in pairs:
        a = ix.setdefault(x, len(ix))
        c = ix.setdefault(y, len(ix))
        out.append((a, c))
    return tuple(out)


@lru_cache(maxsize=4096)
def _classifier(pattern: tuple, H: TargetTemplate) -> dict:
    # per id-pattern cache: id tuple -> MotifEncoding, or None when the collapse is not H
    return {}


def _classify(ids: tuple[int, ...], pattern: tuple, H: TargetTemplate) -> MotifEncoding | None:
    cache = _classifier(pattern, H)
    try:
        return cache[ids]
    except KeyError:
        pass
    pairs = [pattern[z] for z in ids]
    enc = canonical_encoding(pairs) if topology_matches(pairs, H) else None
    cache[ids] = enc
    return enc


def sequence_counts(
    S: Sequence[TemporalEdge],
    ell: int,
    delta: int,
    max_ids: int | None = None,
    dense: bool | None = None,
) -> tuple[WindowCounts, list[tuple[int, int]]]:
    """Run the sliding-window DP over ``S``; returns the counts and the id -> pair table."""
    ids: dict[tuple[int, int], int] = {}
    rev: list[tuple[int, int]] = []
    seq = []
    for x, y, _ in S:
        i = ids.get((x, y))
        if i is None:
            i = ids[(x, y)] = len(rev)
            rev.append((x, y))
        seq.append(i)
    if max_ids is not None and len(rev) > max_ids:
        raise RuntimeError(
            f"{len(rev)} distinct directed pairs in a candidate sequence, at most {max_ids} allowed"
        )
    W = WindowCounts(ell, id_bits(max_ids or max(len(rev), 2)), dense=dense)
    times = [e[2] for e in S]
    start = 0
    for i, z in enumerate(seq):
        t = times[i]
        while t - times[start] > delta:
            W.decrement(seq[start])
            start += 1
        W.increment(z)
    return W, rev


def motif_counts(
    S: Sequence[TemporalEdge],
    H: TargetTemplate,
    ell: int,
    delta: int,
    dense: bool | None = None,
) -> dict[MotifEncoding, int]:
    """Count the delta-instances in ``S`` of each motif whose collapse is ``H``.

    ``S`` must be time-sorted and its static projection isomorphic to ``H``.
    """
    W, rev = sequence_counts(S, ell, delta, max_ids=2 * H.num_edges, dense=dense)
    pattern = _pattern(rev)
    out: dict[MotifEncoding, int] = {}
    for ids, c in W.nonzero(ell).items():
        enc = _classify(ids, pattern, H)
        if enc is not None:
            out[enc] = out.get(enc, 0) + c
    return out


class EstimateTable:
    """Running per-motif sums of the per-iteration estimates.

    Sums use Neumaier compensation. ``sumsq`` tracks squared per-iteration
    values when iterations are added through :meth:`add_iteration`.
    """

    def __init__(self):
        self.sums: dict[MotifEncoding, list[float]] = {}
        self.sumsq: dict[MotifEncoding, list[float]] = {}
        self.samples = 0

    def __len__(self) -> int:
        return len(self.sums)

    def __contains__(self, enc) -> bool:
        return enc in self.sums

    @staticmethod
    def _acc(table: dict, key, x: float) -> None:
        cell = table.get(key)
        if cell is None:
            table[key] = [x, 0.0]
            return
        s = cell[0]
        t = s + x
        if abs(s) >= abs(x):
            cell[1] += (s - t) + x
        else:
            cell[1] += (x - t) + s
        cell[0] = t

    def add(self, enc: MotifEncoding, x: float) -> None:
        self._acc(self.sums, enc, x)

    def add_iteration(self, xs: Mapping[MotifEncoding, float]) -> None:
        for enc, x in xs.items():
            self._acc(self.sums, enc, x)
            self._acc(self.sumsq, enc, x * x)
        self.samples += 1

    def total(self, enc: MotifEncoding) -> float:
        cell = self.sums.get(enc)
        return 0.0 if cell is None else cell[0] + cell[1]

    def totals(self) -> dict[MotifEncoding, float]:
        return {k: c[0] + c[1] for k, c in self.sums.items()}

    def merge_from(self, other: "EstimateTable") -> None:
        for table, src in ((self.sums, other.sums), (self.sumsq, other.sumsq)):
            for k, (s, c) in src.items():
                self._acc(table, k, s)
                self._acc(table, k, c)
        self.samples += other.samples

    def variances(self, s: int | None = None) -> dict[MotifEncoding, float]:
        """Sample variance of the per-iteration estimate, zeros included."""
        s = self.samples if s is None else s
        if s < 2:
            return {k: 0.0 for k in self.sums}
        out = {}
        for k, (a, ca) in self.sums.items():
            tot = a + ca
            q = self.sumsq.get(k)
            sq = 0.0 if q is None else q[0] + q[1]
            out[k] = max(0.0, (sq - tot * tot / s) / (s - 1))
        return out


def fast_update(
    delta: int,
    S: Sequence[TemporalEdge],
    estimates,
    p_eR: float,
    H: TargetTemplate,
    ell: int,
) -> dict[MotifEncoding, int]:
    """Add ``count / (template edges * p_eR)`` for every motif counted in ``S``.

    ``estimates`` is an :class:`EstimateTable` or a plain dict. Returns the raw
    per-motif counts.
    """
    if not 0.0 < p_eR <= 1.0:
        raise ValueError(f"sampling probability must be in (0, 1], got {p_eR}")
    counts = motif_counts(S, H, ell, delta)
    scale = H.num_edges * p_eR
    if isinstance(estimates, EstimateTable):
        for enc, c in counts.items():
            estimates.add(enc, c / scale)
    else:
        for enc, c in counts.items():
            estimates[enc] = estimates.get(enc, 0.0) + c / scale
    return counts


def finalize(estimates: EstimateTable, s: int | None = None) -> dict[MotifEncoding, float]:
    s = estimates.samples if s is None else s
    if s < 1:
        raise ValueError("cannot finalise estimates after zero iterations")
    return {k: v / s for k, v in estimates.totals().items()}

