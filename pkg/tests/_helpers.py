"""Reference implementations shared by the test modules."""

import itertools

import numpy as np

from tempmotif.netio import TemporalNetwork


def random_network(rng: np.random.Generator, n_max: int = 12, m_max: int = 25, t_max: int = 40) -> TemporalNetwork:
    n = int(rng.integers(3, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    edges = []
    while len(edges) < m:
        u, v = rng.integers(0, n, 2).tolist()
        if u != v:
            edges.append((u, v, int(rng.integers(0, t_max))))
    return TemporalNetwork.from_edges(edges, relabel=False)


def brute_subsequences(ids, times, ell, delta):
    """Counts of every id tuple formed by an index-increasing subsequence of
    length ``ell`` whose first and last times differ by at most ``delta``."""
    out = {}
    for idx in itertools.combinations(range(len(ids)), ell):
        if times[idx[-1]] - times[idx[0]] <= delta:
            key = tuple(ids[i] for i in idx)
            out[key] = out.get(key, 0) + 1
    return out
