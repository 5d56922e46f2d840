"""Exact delta-instance counts at desk scale, and the timeline-shuffle null model."""

from __future__ import annotations

import bisect
import itertools
import math
import multiprocessing as mp
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping

import numpy as np

from .motifs import MotifEncoding, TargetTemplate, canonical_encoding, topology_matches
from .netio import StaticProjection, TemporalNetwork, project_static

DEFAULT_BUDGET = 10**8


class WorkBudgetExceeded(RuntimeError):
    pass


@dataclass
class ExactCounts:
    counts: dict[MotifEncoding, int]
    breakdown: dict[MotifEncoding, dict[int, int]] | None = None
    proj: StaticProjection | None = field(default=None, repr=False)

    def sorted_items(self) -> list[tuple[MotifEncoding, int]]:
        return sorted(self.counts.items())

    def identity_violations(self, eh: int) -> list[MotifEncoding]:
        """Motifs whose per-edge counts do not sum to ``eh`` times their count."""
        if self.breakdown is None:
            raise ValueError("counts were computed without the per-edge breakdown")
        return [
            enc for enc, c in self.counts.items()
            if sum(self.breakdown.get(enc, {}).values()) != eh * c
        ]


def work_upper_bound(t: np.ndarray, ell: int, delta: int) -> int:
    """Number of partial sequences of length < ell that start at each edge
    and stay within delta, summed over start edges."""
    hi = np.searchsorted(t, t + delta, side="right")
    w = hi - np.arange(len(t)) - 1
    total = 0
    for wi in w.tolist():
        for L in range(ell):
            total += math.comb(wi, L)
    return total


@lru_cache(maxsize=None)
def _embeddable(k: int, edges: tuple, hk: int, hedges: tuple) -> bool:
    # non-induced embedding of a small labelled graph into H
    if k > hk or len(edges) > len(hedges):
        return False
    target = set(hedges)
    for img in itertools.permutations(range(hk), k):
        if all(tuple(sorted((img[a], img[b]))) in target for a, b in edges):
            return True
    return False


def _normal(und) -> tuple[int, tuple]:
    nodes = sorted({v for e in und for v in e})
    ix = {v: i for i, v in enumerate(nodes)}
    return len(nodes), tuple(sorted((ix[a], ix[b]) for a, b in und))


def _count_from(starts, T: TemporalNetwork, proj: StaticProjection, H: TargetTemplate,
                ell: int, delta: int, with_breakdown: bool):
    src, dst, ts = T.src.tolist(), T.dst.tolist(), T.t.tolist()
    adj = proj.adjacency
    eh, hk, hedges = H.num_edges, H.k, H.edges
    counts: dict[MotifEncoding, int] = {}
    breakdown: dict[MotifEncoding, dict[int, int]] = {}
    seq: list[int] = []

    def feasible(nodes, und, remaining):
        if len(nodes) > hk or len(und) > eh or eh - len(und) > remaining:
            return False
        k, rel = _normal(und)
        return _embeddable(k, rel, hk, hedges)

    def extend(nodes, und, nxt, hi):
        if len(seq) == ell:
            pairs = [(src[i], dst[i]) for i in seq]
            if not topology_matches(pairs, H):
                return
            enc = canonical_encoding(pairs)
            counts[enc] = counts.get(enc, 0) + 1
            if with_breakdown:
                row = breakdown.setdefault(enc, {})
                for a, b in und:
                    e = adj[a][b]
                    row[e] = row.get(e, 0) + 1
            return
        remaining = ell - len(seq) - 1
        for j in range(nxt, hi):
            a, b = src[j], dst[j]
            key = (a, b) if a < b else (b, a)
            n2 = nodes | {a, b}
            u2 = und | {key}
            if not feasible(n2, u2, remaining):
                continue
            seq.append(j)
            extend(n2, u2, j + 1, hi)
            seq.pop()

    for i in starts:
        hi = bisect.bisect_right(ts, ts[i] + delta)
        a, b = src[i], dst[i]
        und = frozenset({(a, b) if a < b else (b, a)})
        nodes = frozenset({a, b})
        if not feasible(nodes, und, ell - 1):
            continue
        seq.append(i)
        extend(nodes, und, i + 1, hi)
        seq.pop()
    return counts, breakdown


_POOL_ARGS = None


def _pool_init(args):
    global _POOL_ARGS
    _POOL_ARGS = args


def _pool_task(starts):
    return _count_from(starts, *_POOL_ARGS)


def exact_count(
    T: TemporalNetwork,
    H: TargetTemplate,
    ell: int,
    delta: int,
    with_breakdown: bool = False,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    proj: StaticProjection | None = None,
) -> ExactCounts:
    """Exhaustive count of every motif of the template class.

    Backtracks from each start edge over later edges within ``delta``; a branch
    is cut once its undirected collapse can no longer grow into a copy of ``H``.
    Raises :class:`WorkBudgetExceeded` when the up-front work bound is above
    ``budget``.
    """
    if ell < H.num_edges:
        raise ValueError(f"ell={ell} is smaller than the template edge count {H.num_edges}")
    bound = work_upper_bound(T.t, ell, delta)
    if bound > budget:
        raise WorkBudgetExceeded(
            f"exact counting would explore up to {bound:.3g} partial sequences "
            f"(budget {budget:.3g}); shrink the network, delta or ell, or raise the budget"
        )
    proj = project_static(T) if proj is None else proj
    args = (T, proj, H, ell, delta, with_breakdown)
    if workers <= 1:
        counts, breakdown = _count_from(range(T.m), *args)
    else:
        chunks = [range(lo, min(lo + 64, T.m)) for lo in range(0, T.m, 64)]
        counts, breakdown = {}, {}
        with ProcessPoolExecutor(workers, mp_context=mp.get_context("fork"),
                                 initializer=_pool_init, initargs=(args,)) as pool:
            for c, bd in pool.map(_pool_task, chunks):
                for k, v in c.items():
                    counts[k] = counts.get(k, 0) + v
                for k, row in bd.items():
                    dst = breakdown.setdefault(k, {})
                    for e, v in row.items():
                        dst[e] = dst.get(e, 0) + v
    return ExactCounts(counts, breakdown if with_breakdown else None, proj)


# Independent reference: every ell-combination of edges, no pruning, its own
# isomorphism test and its own class key.

def naive_key(pairs) -> tuple:
    """Lexicographically smallest relabelling of an edge sequence over all
    vertex bijections; equal keys iff the sequences are not distinct motifs."""
    nodes = sorted({v for p in pairs for v in p})
    best = None
    for perm in itertools.permutations(range(len(nodes))):
        m = dict(zip(nodes, perm))
        cand = tuple((m[a], m[b]) for a, b in pairs)
        if best is None or cand < best:
            best = cand
    return best


def _naive_is_template(pairs, H: TargetTemplate) -> bool:
    nodes = sorted({v for p in pairs for v in p})
    if len(nodes) != H.k:
        return False
    und = {frozenset(p) for p in pairs}
    target = {frozenset(e) for e in H.edges}
    for perm in itertools.permutations(range(H.k)):
        m = dict(zip(nodes, perm))
        if {frozenset((m[a], m[b])) for a, b in (tuple(e) for e in und)} == target:
            return True
    return False


def naive_count(T: TemporalNetwork, H: TargetTemplate, ell: int, delta: int) -> dict[tuple, int]:
    src, dst, ts = T.src.tolist(), T.dst.tolist(), T.t.tolist()
    out: dict[tuple, int] = {}
    for idx in itertools.combinations(range(T.m), ell):
        if ts[idx[-1]] - ts[idx[0]] > delta:
            continue
        pairs = [(src[i], dst[i]) for i in idx]
        if _naive_is_template(pairs, H):
            key = naive_key(pairs)
            out[key] = out.get(key, 0) + 1
    return out


def timeline_shuffle(T: TemporalNetwork, rng: np.random.Generator) -> TemporalNetwork:
    """Permute all timestamps over the directed edge slots, keeping the
    directed static multigraph fixed."""
    t = T.t[rng.permutation(T.m)]
    order = np.argsort(t, kind="stable")
    return TemporalNetwork(
        n=T.n,
        src=T.src[order],
        dst=T.dst[order],
        t=t[order],
        labels=T.labels,
        order=T.order[order],
    )


def shuffle_rng(seed: int, r: int) -> np.random.Generator:
    return np.random.default_rng([seed, r])


@dataclass
class NullModelEnsemble:
    samples: dict[MotifEncoding, np.ndarray]
    R: int

    def mean(self, enc) -> float:
        x = self.samples.get(enc)
        return 0.0 if x is None else float(x.mean())

    def std(self, enc) -> float:
        x = self.samples.get(enc)
        return 0.0 if x is None else float(x.std())


def null_ensemble(
    T: TemporalNetwork,
    counter: Callable[[TemporalNetwork], Mapping[MotifEncoding, float]],
    R: int,
    seed: int = 0,
) -> NullModelEnsemble:
    """Motif counts on ``R`` timeline-shuffled copies of ``T``."""
    if R < 2:
        raise ValueError("a null-model ensemble needs at least 2 shuffles")
    per_run = [counter(timeline_shuffle(T, shuffle_rng(seed, r))) for r in range(R)]
    keys = set().union(*per_run)
    samples = {k: np.array([run.get(k, 0) for run in per_run], dtype=np.float64) for k in keys}
    return NullModelEnsemble(samples, R)


def z_scores(original: Mapping[MotifEncoding, float], ensemble: NullModelEnsemble) -> dict[MotifEncoding, float]:
    """(count - null mean) / null population std; 0 when both deviations are
    zero, signed infinity when only the std is."""
    if ensemble.R < 2:
        raise ValueError("z-scores need at least 2 null samples")
    if hasattr(original, "counts"):
        original = original.counts
    elif hasattr(original, "estimates"):
        original = original.estimates
    zeros = np.zeros(ensemble.R)
    out = {}
    for enc in set(original) | set(ensemble.samples):
        c = float(original.get(enc, 0))
        x = ensemble.samples.get(enc, zeros)
        mu, sd = float(x.mean()), float(x.std())
        if sd == 0.0:
            out[enc] = 0.0 if c == mu else math.copysign(math.inf, c - mu)
        else:
            out[enc] = (c - mu) / sd
    return out
