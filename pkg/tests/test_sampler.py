import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tempmotif.count import EstimateTable
from tempmotif.enumeration import DISTRIBUTIONS
from tempmotif.motifs import EDGE, PATH2, SQUARE, TRIANGLE, canonical_encoding
from tempmotif.oracle import exact_count
from tempmotif.sampler import (
    CHUNK_SIZE,
    RunConfig,
    _Context,
    bennett_h,
    edge_counts,
    estimate,
    iteration_rng,
    merge,
    required_samples,
    run,
)
from tempmotif.enumeration import build_distribution


class TestRequiredSamples:
    def test_degenerate(self):
        assert required_samples(0.5, 0.1, 3, 1, 3, 8) == 1

    def test_worked_value(self):
        assert required_samples(0.5, 0.1, 1000, 2, 3, 96) == 11576

    def test_against_high_precision(self):
        import decimal
        D = decimal.Decimal
        decimal.getcontext().prec = 50
        eps = D("0.5")
        h = (1 + eps) * (1 + eps).ln() - eps
        lead = D(1000) / D(6) - 1
        s = lead * (D(2 * 96) / D("0.1")).ln() / h
        assert required_samples(0.5, 0.1, 1000, 2, 3, 96) == math.ceil(s)

    @given(st.floats(0.05, 2.0), st.floats(0.001, 0.9), st.integers(10, 10**6), st.integers(1, 5))
    def test_halving_eta(self, eps, eta, m, alpha):
        eh = 3
        if m <= alpha * eh:
            return
        a = required_samples(eps, eta, m, alpha, eh, 96)
        b = required_samples(eps, eta / 2, m, alpha, eh, 96)
        step = (m / (alpha * eh) - 1) * math.log(2) / bennett_h(eps)
        # both are ceilings, so the gap is within one of the exact step
        assert abs((b - a) - step) <= 1 + 1e-9 * step

    @pytest.mark.parametrize("args", [(0, 0.1, 100, 1, 3, 8), (0.5, 1.0, 100, 1, 3, 8), (0.5, 0.1, 2, 1, 3, 8)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            required_samples(*args)


class TestRunConfig:
    def test_needs_exactly_one_mode(self):
        with pytest.raises(ValueError):
            RunConfig(TRIANGLE, 3, 10)
        with pytest.raises(ValueError):
            RunConfig(TRIANGLE, 3, 10, samples=5, epsilon=0.5, eta=0.1)
        with pytest.raises(ValueError):
            RunConfig(TRIANGLE, 3, 10, epsilon=0.5)

    def test_zero_samples(self):
        with pytest.raises(ValueError):
            RunConfig(TRIANGLE, 3, 10, samples=0)

    def test_ell_too_small(self):
        with pytest.raises(ValueError):
            RunConfig(SQUARE, 3, 10, samples=5)

    def test_unknown_distribution(self):
        with pytest.raises(ValueError):
            RunConfig(TRIANGLE, 3, 10, samples=5, distribution="x")


def test_single_triangle_is_exact(one_triangle):
    for s in (1, 7, 300):
        res = estimate(one_triangle, TRIANGLE, 3, 10, samples=s, seed=s)
        assert {k.display: v for k, v in res.estimates.items()} == {"122331": pytest.approx(1.0)}


def test_guarantee_mode_sets_sample_count(bench):
    T, P = bench
    res = run(T, P, RunConfig(TRIANGLE, 3, 1500, epsilon=2.0, eta=0.5))
    assert res.samples == required_samples(2.0, 0.5, P.m, P.alpha, 3, 8)
    assert len(res.sampled_edges) == res.samples


@pytest.mark.parametrize("H, ell", [(TRIANGLE, 3), (TRIANGLE, 4), (SQUARE, 4), (PATH2, 3), (EDGE, 2)])
def test_per_edge_sums_are_exact(bench, H, ell):
    # summing the sampler's per-edge counts over every static edge counts each
    # instance once per template edge
    T, P = bench
    delta = 400 if ell == 4 else 1500
    ctx = _Context(P, H, ell, delta, build_distribution(P), 0)
    total = {}
    for e in range(P.num_edges):
        for enc, c in edge_counts(ctx, e)[0].items():
            total[enc] = total.get(enc, 0) + c
    exact = exact_count(T, H, ell, delta).counts
    assert total == {enc: H.num_edges * c for enc, c in exact.items()}


@pytest.mark.parametrize("kind", DISTRIBUTIONS)
def test_exact_expectation_under_each_distribution(bench, kind):
    # expected per-iteration value, sum over e of p_e * count(e) / (3 p_e), in exact arithmetic
    T, P = bench
    dist = build_distribution(P, kind)
    ctx = _Context(P, TRIANGLE, 3, 1500, dist, 0)
    expect = {}
    for e in range(P.num_edges):
        for enc, c in edge_counts(ctx, e)[0].items():
            expect[enc] = expect.get(enc, 0) + Fraction(c, 3)
    exact = exact_count(T, TRIANGLE, 3, 1500).counts
    assert expect == {k: Fraction(v) for k, v in exact.items()}


def test_unbiased_small_sample(bench):
    T, P = bench
    exact = exact_count(T, TRIANGLE, 3, 1500).counts
    res = run(T, P, RunConfig(TRIANGLE, 3, 1500, samples=4000, seed=3))
    for enc, c in exact.items():
        se = math.sqrt(res.x_variance[enc] / res.samples)
        assert abs(res.estimates[enc] - c) < 4 * se


def test_cache_does_not_change_results(bench):
    T, P = bench
    a = run(T, P, RunConfig(TRIANGLE, 3, 1500, samples=700, seed=9))
    b = run(T, P, RunConfig(TRIANGLE, 3, 1500, samples=700, seed=9, cache_edges=True))
    assert a.estimates == b.estimates
    assert (a.sampled_edges == b.sampled_edges).all()


def test_seed_changes_results(bench):
    T, P = bench
    a = run(T, P, RunConfig(TRIANGLE, 3, 1500, samples=100, seed=1))
    b = run(T, P, RunConfig(TRIANGLE, 3, 1500, samples=100, seed=2))
    assert a.estimates != b.estimates


def test_iteration_streams_are_positional():
    x = [iteration_rng(4, j).random() for j in range(5)]
    assert x == [iteration_rng(4, j).random() for j in range(5)]
    assert len(set(x)) == 5


@pytest.mark.parametrize("workers", [2, 3])
def test_workers_bit_identical(bench, workers):
    T, P = bench
    s = 3 * CHUNK_SIZE + 17
    a = run(T, P, RunConfig(TRIANGLE, 3, 1500, samples=s, seed=5))
    b = run(T, P, RunConfig(TRIANGLE, 3, 1500, samples=s, seed=5, workers=workers))
    assert a.estimates == b.estimates
    assert a.x_variance == b.x_variance
    assert (a.sampled_edges == b.sampled_edges).all()


def test_merge_helper():
    a, b = canonical_encoding([(0, 1)]), canonical_encoding([(0, 1), (1, 0)])
    x, y = EstimateTable(), EstimateTable()
    x.add_iteration({a: 1.0})
    y.add_iteration({a: 2.0, b: 1.0})
    m = merge([x, y])
    assert m.totals() == {a: 3.0, b: 1.0} and m.samples == 2
    assert merge([x, EstimateTable()]).totals() == x.totals()


def test_diagnostics(bench):
    T, P = bench
    res = run(T, P, RunConfig(TRIANGLE, 3, 1500, samples=300, seed=0))
    assert res.matches.shape == res.pruned.shape == (300,)
    assert (res.pruned <= res.matches).all()
    assert np.isin(res.sampled_edges, np.arange(P.num_edges)).all()
    assert res.sorted_items() == sorted(res.estimates.items())


def test_mean_of_many_small_runs_close_to_exact(bench):
    # 200 runs of 50 iterations; the mean should sit within 2% of the exact count
    T, P = bench
    exact = exact_count(T, TRIANGLE, 3, 1500).counts
    runs = [run(T, P, RunConfig(TRIANGLE, 3, 1500, samples=50, seed=r, cache_edges=True)).estimates
            for r in range(200)]
    for enc, c in exact.items():
        if c >= 20:
            mean = np.mean([r.get(enc, 0.0) for r in runs])
            assert abs(mean - c) <= 0.02 * c, (enc.display, c, mean)
