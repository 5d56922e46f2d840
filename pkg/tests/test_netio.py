import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tempmotif.netio import (
    ParseError,
    TemporalEdge,
    TemporalNetwork,
    load_temporal_network,
    project_static,
    read_temporal_network,
    temporal_subgraph,
)

edge_lists = st.lists(
    st.tuples(st.integers(0, 8), st.integers(0, 8), st.integers(0, 50)), min_size=1, max_size=40
).filter(lambda es: any(a != b for a, b, _ in es))


def test_sorted_on_load():
    T = load_temporal_network(["1 2 10", "0 1 3"])
    assert T.n == 3 and T.m == 2
    assert T.edges == [(0, 1, 3), (1, 2, 10)]


def test_self_loop_dropped_with_warning(caplog):
    with caplog.at_level(logging.WARNING):
        T = load_temporal_network(["3 3 5", "1 2 4"])
    assert T.self_loops_dropped == 1
    assert T.m == 1
    assert "self-loop" in caplog.text


def test_ties_keep_input_order():
    T = load_temporal_network(["1 2 7", "2 3 7"])
    assert [(T.labels[a], T.labels[b]) for a, b, _ in T.edges] == [(1, 2), (2, 3)]


def test_comments_and_blank_lines():
    T = load_temporal_network(["# header", "", "4 9 1", "  9 4 2  "])
    assert T.m == 2
    assert list(T.labels) == [4, 9]


@pytest.mark.parametrize("lines", [["1 2"], ["a b 3"], ["1 2 3.5"], ["-1 2 3"], [], ["# only"]])
def test_malformed_input(lines):
    with pytest.raises(ParseError):
        load_temporal_network(lines)


def test_error_mentions_line_number():
    with pytest.raises(ParseError, match="line 2"):
        load_temporal_network(["1 2 3", "1 x 4"])


def test_time_scale():
    T = load_temporal_network(["1 2 0.5", "2 3 1.25"], time_scale=100)
    assert T.t.tolist() == [50, 125]


def test_dedup_optional():
    lines = ["1 2 3", "1 2 3", "2 1 3"]
    assert load_temporal_network(lines).m == 3
    T = load_temporal_network(lines, dedup=True)
    assert T.m == 2 and T.duplicates_dropped == 1


def test_read_from_file(tmp_path):
    p = tmp_path / "net.txt"
    p.write_text("1 2 5\n2 1 9\n1 3 2\n")
    assert read_temporal_network(p).m == 3


@given(edge_lists)
def test_sorted_and_stable(edges):
    T = TemporalNetwork.from_edges(edges)
    kept = [(a, b, t) for a, b, t in edges if a != b]
    assert T.m == len(kept)
    assert (np.diff(T.t) >= 0).all()
    # original input order among ties
    expect = sorted(range(len(kept)), key=lambda i: kept[i][2])
    assert [(T.labels[a], T.labels[b], t) for a, b, t in T.edges] == [kept[i] for i in expect]


class TestProjection:
    @pytest.fixture
    def T(self):
        return TemporalNetwork.from_edges([(1, 2, 5), (2, 1, 9), (1, 3, 2)], relabel=False)

    def test_weights_and_timeline(self, T):
        P = project_static(T)
        assert P.num_edges == 2
        e12, e13 = P.edge_index(1, 2), P.edge_index(1, 3)
        assert P.static_edges[e12].weight == 2
        assert P.static_edges[e13].weight == 1
        assert P.alpha == 1
        assert P.static_edges[e12].timeline == [(True, 5), (False, 9)]

    def test_single_edge(self):
        P = project_static(TemporalNetwork.from_edges([(1, 2, 5)]))
        assert P.num_edges == 1 and P.alpha == 1 and P.dmax == 1

    def test_all_on_one_pair(self):
        T = TemporalNetwork.from_edges([(0, 1, t) if t % 2 else (1, 0, t) for t in range(7)])
        P = project_static(T)
        assert P.num_edges == 1
        assert P.alpha == P.wmax == 7

    def test_subgraph_single(self, T):
        P = project_static(T)
        assert temporal_subgraph(P, [P.edge_index(1, 2)]) == [(1, 2, 5), (2, 1, 9)]

    def test_subgraph_merge(self, T):
        P = project_static(T)
        h = [P.edge_index(1, 2), P.edge_index(1, 3)]
        assert temporal_subgraph(P, h) == [(1, 3, 2), (1, 2, 5), (2, 1, 9)]
        assert temporal_subgraph(P, h[::-1]) == temporal_subgraph(P, h)

    def test_subgraph_empty(self, T):
        with pytest.raises(ValueError):
            temporal_subgraph(project_static(T), [])


@given(edge_lists)
@settings(max_examples=60)
def test_projection_invariants(edges):
    T = TemporalNetwork.from_edges(edges)
    P = project_static(T)
    assert int(P.weights.sum()) == T.m
    assert P.alpha >= 1
    pairs = {frozenset((int(a), int(b))) for a, b in zip(T.src, T.dst)}
    assert len(pairs) == P.num_edges
    for pos in range(T.m):
        e = P.static_edge_of(pos)
        assert pos in P.static_edges[e].positions
    # the merge of every static edge gives back the whole network
    assert temporal_subgraph(P, list(range(P.num_edges))) == T.edges


def test_temporal_edge_is_tuple():
    assert TemporalEdge(1, 2, 3) == (1, 2, 3)
