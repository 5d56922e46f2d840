"""Edge-sampling estimator driver: sample budget, iterations, parallel merge."""

from __future__ import annotations

import math
import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .count import EstimateTable, finalize, motif_counts, prune
from .enumeration import DISTRIBUTIONS, SamplingDistribution, build_distribution, local_enumerate, sample_edge
from .motifs import MotifEncoding, TargetTemplate, enumerate_motif_class
from .netio import StaticProjection, TemporalNetwork, project_static, temporal_subgraph

# fixed so that results do not depend on the worker count
CHUNK_SIZE = 256


def bennett_h(eps: float) -> float:
    return (1 + eps) * math.log1p(eps) - eps


def required_samples(eps: float, eta: float, m: int, alpha: int, eh: int, class_size: int) -> int:
    """Iterations sufficient for a simultaneous relative eps-approximation
    of all ``class_size`` motif counts with probability at least 1 - eta."""
    if not eps > 0:
        raise ValueError("epsilon must be positive")
    if not 0 < eta < 1:
        raise ValueError("eta must lie in (0, 1)")
    if alpha < 1 or eh < 1 or class_size < 1:
        raise ValueError("alpha, the template edge count and the class size must be >= 1")
    if m < alpha * eh:
        raise ValueError(f"m={m} is smaller than alpha * template edges = {alpha * eh}")
    lead = m / (alpha * eh) - 1
    if lead <= 0:
        return 1
    return max(1, math.ceil(lead / bennett_h(eps) * math.log(2 * class_size / eta)))


@dataclass
class RunConfig:
    template: TargetTemplate
    ell: int
    delta: int
    samples: int | None = None
    epsilon: float | None = None
    eta: float | None = None
    distribution: str = "temporal-weight"
    seed: int = 0
    workers: int = 1
    # reuse the per-edge counts when an edge is drawn again; results are unchanged
    cache_edges: bool = False

    def __post_init__(self):
        by_budget = self.samples is not None
        by_guarantee = self.epsilon is not None or self.eta is not None
        if by_budget == by_guarantee:
            raise ValueError("give either samples or (epsilon, eta), not both")
        if by_budget and self.samples < 1:
            raise ValueError("samples must be >= 1")
        if by_guarantee and (self.epsilon is None or self.eta is None):
            raise ValueError("epsilon and eta must be given together")
        if self.ell < self.template.num_edges:
            raise ValueError(f"ell={self.ell} is smaller than the template edge count {self.template.num_edges}")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution {self.distribution!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


@dataclass
class RunResult:
    estimates: dict[MotifEncoding, float]
    samples: int
    wall_time: float
    sampled_edges: np.ndarray
    matches: np.ndarray
    pruned: np.ndarray
    x_variance: dict[MotifEncoding, float] = field(default_factory=dict)
    table: EstimateTable | None = field(default=None, repr=False)

    def sorted_items(self) -> list[tuple[MotifEncoding, float]]:
        return sorted(self.estimates.items())


@dataclass
class _Context:
    proj: StaticProjection
    H: TargetTemplate
    ell: int
    delta: int
    dist: SamplingDistribution
    seed: int
    cache: dict | None = None


def iteration_rng(seed: int, j: int) -> np.random.Generator:
    """Independent stream for iteration ``j``: Philox keyed by the seed,
    counter block offset by ``j``."""
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, j, 0, 0]))


def edge_counts(ctx: _Context, e: int) -> tuple[dict[MotifEncoding, int], int, int]:
    """Per-motif delta-instance counts over all template copies containing ``e``,
    with the number of copies and of pruned copies."""
    if ctx.cache is not None:
        hit = ctx.cache.get(e)
        if hit is not None:
            return hit
    totals: dict[MotifEncoding, int] = {}
    matches = local_enumerate(ctx.proj, ctx.H, e)
    pruned = 0
    for h in matches:
        S = temporal_subgraph(ctx.proj, h)
        if prune([x[2] for x in S], ctx.ell, ctx.delta):
            pruned += 1
            continue
        for enc, c in motif_counts(S, ctx.H, ctx.ell, ctx.delta).items():
            totals[enc] = totals.get(enc, 0) + c
    out = (totals, len(matches), pruned)
    if ctx.cache is not None:
        ctx.cache[e] = out
    return out


def _run_chunk(ctx: _Context, lo: int, hi: int):
    table = EstimateTable()
    n = hi - lo
    edges = np.empty(n, dtype=np.int64)
    nmatch = np.empty(n, dtype=np.int64)
    npruned = np.empty(n, dtype=np.int64)
    eh = ctx.H.num_edges
    prob = ctx.dist.prob
    for i, j in enumerate(range(lo, hi)):
        e = sample_edge(ctx.dist, iteration_rng(ctx.seed, j))
        counts, nm, npr = edge_counts(ctx, e)
        scale = eh * float(prob[e])
        table.add_iteration({enc: c / scale for enc, c in counts.items()})
        edges[i], nmatch[i], npruned[i] = e, nm, npr
    return table, edges, nmatch, npruned


_WORKER_CTX: _Context | None = None


def _init_worker(ctx: _Context) -> None:
    global _WORKER_CTX
    _WORKER_CTX = ctx


def _worker_chunk(lo: int, hi: int):
    return _run_chunk(_WORKER_CTX, lo, hi)


def merge(tables: Sequence[EstimateTable]) -> EstimateTable:
    out = EstimateTable()
    for t in tables:
        out.merge_from(t)
    return out


def run(
    T: TemporalNetwork,
    proj: StaticProjection | None,
    config: RunConfig,
    dist: SamplingDistribution | None = None,
) -> RunResult:
    """Estimate the count of every motif of the template class present in ``T``.

    Iteration ``j`` draws its edge from :func:`iteration_rng` ``(seed, j)`` and
    iterations are grouped into fixed-size chunks merged in chunk order, so the
    result is bit-identical for any number of workers.
    """
    t0 = time.perf_counter()
    proj = project_static(T) if proj is None else proj
    dist = build_distribution(proj, config.distribution) if dist is None else dist
    H = config.template
    s = config.samples
    if s is None:
        size = len(enumerate_motif_class(H, config.ell))
        s = required_samples(config.epsilon, config.eta, proj.m, proj.alpha, H.num_edges, size)
    ctx = _Context(proj, H, config.ell, config.delta, dist, config.seed,
                   {} if config.cache_edges else None)
    bounds = [(lo, min(lo + CHUNK_SIZE, s)) for lo in range(0, s, CHUNK_SIZE)]

    if config.workers == 1 or len(bounds) == 1:
        parts = [_run_chunk(ctx, lo, hi) for lo, hi in bounds]
    else:
        with ProcessPoolExecutor(
            max_workers=config.workers,
            mp_context=mp.get_context("fork"),
            initializer=_init_worker,
            initargs=(ctx,),
        ) as pool:
            futures = [pool.submit(_worker_chunk, lo, hi) for lo, hi in bounds]
            parts = [f.result() for f in futures]

    table = merge([p[0] for p in parts])
    return RunResult(
        estimates=finalize(table, s),
        samples=s,
        wall_time=time.perf_counter() - t0,
        sampled_edges=np.concatenate([p[1] for p in parts]),
        matches=np.concatenate([p[2] for p in parts]),
        pruned=np.concatenate([p[3] for p in parts]),
        x_variance=table.variances(s),
        table=table,
    )


def estimate(T: TemporalNetwork, H: TargetTemplate, ell: int, delta: int, **kwargs) -> RunResult:
    """Convenience wrapper: ``run`` with a fresh projection and config."""
    return run(T, None, RunConfig(H, ell, delta, **kwargs))
