import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynagrid.graph import Graph
from dynagrid.oracles import (
    INFEASIBLE,
    diameter_info,
    directed_girth,
    has_directed_cycle,
    min_plus_product,
    min_weight_perfect_matching,
    oumv_answer,
    oumv_answer_via_matvec,
)

from conftest import enumerate_min_perfect_matching, random_graph


def min_plus_k_outer(a, b):
    n, inner = len(a), len(b)
    cols = len(b[0])
    out = [[None] * cols for _ in range(n)]
    for k in range(inner):
        for i in range(n):
            for j in range(cols):
                cand = a[i][k] + b[k][j]
                if out[i][j] is None or cand < out[i][j]:
                    out[i][j] = cand
    return out


def test_min_plus_identity_case():
    assert min_plus_product([[0]], [[0]]) == [[0]]


def test_min_plus_small_case():
    assert min_plus_product([[1, 3], [2, 0]], [[4, 1], [0, 5]]) == [[3, 2], [0, 3]]


def test_min_plus_zero_row_gives_column_minima():
    b = [[4, 1], [0, 5], [2, 2]]
    a = [[0, 0, 0]]
    assert min_plus_product(a, b) == [[min(col) for col in zip(*b)]]


def test_min_plus_dimension_mismatch():
    with pytest.raises(ValueError):
        min_plus_product([[1, 2]], [[1, 2]])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), st.data())
def test_min_plus_evaluation_orders_agree(n, inner, cols, data):
    entry = st.integers(min_value=0, max_value=30)
    a = [[data.draw(entry) for _ in range(inner)] for _ in range(n)]
    b = [[data.draw(entry) for _ in range(cols)] for _ in range(inner)]
    assert min_plus_product(a, b) == min_plus_k_outer(a, b)


def test_oumv_examples():
    identity = [[1, 0], [0, 1]]
    assert oumv_answer(identity, [1, 0], [0, 1]) == 0
    assert oumv_answer(identity, [1, 0], [1, 0]) == 1
    assert oumv_answer([[0, 1], [1, 0]], [1, 1], [1, 0]) == 1


def test_oumv_dimension_mismatch():
    with pytest.raises(ValueError):
        oumv_answer([[1]], [1, 1], [1])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_oumv_two_evaluations_agree(rows, cols, data):
    bit = st.integers(0, 1)
    m = [[data.draw(bit) for _ in range(cols)] for _ in range(rows)]
    u = [data.draw(bit) for _ in range(rows)]
    v = [data.draw(bit) for _ in range(cols)]
    assert oumv_answer(m, u, v) == oumv_answer_via_matvec(m, u, v)


# -- matching -----------------------------------------------------------------


def graph_from_edges(edges, extra_nodes=()):
    g = Graph()
    seen = []
    for u, v, _ in edges:
        for n in (u, v):
            if n not in seen:
                seen.append(n)
    for n in extra_nodes:
        if n not in seen:
            seen.append(n)
    for n in seen:
        g.add_node(n)
    for u, v, w in edges:
        g.add_edge(u, v, w)
    return g.freeze()


def test_matching_single_edge():
    g = graph_from_edges([("a", "b", 5)])
    result = min_weight_perfect_matching(g)
    assert result.weight == 5
    assert result.pairs == [("a", "b")]


def test_matching_four_cycle_picks_lighter_pairing():
    g = graph_from_edges([("a", "b", 1), ("b", "c", 2), ("c", "d", 3), ("d", "a", 4)])
    assert min_weight_perfect_matching(g).weight == 4  # min(1+3, 2+4)


def test_matching_infeasible_cases():
    # odd node count
    g = graph_from_edges([("a", "b", 1)], extra_nodes=["c"])
    assert min_weight_perfect_matching(g) is INFEASIBLE
    # isolated node on an even graph
    g2 = graph_from_edges([("a", "b", 1)], extra_nodes=["c", "d"])
    assert min_weight_perfect_matching(g2) is INFEASIBLE
    # unbalanced component: a path of 3 nodes plus a lone partner
    g3 = graph_from_edges([("a", "b", 1), ("b", "c", 1), ("x", "y", 1)],
                          extra_nodes=["z", "q"])
    assert min_weight_perfect_matching(g3) is INFEASIBLE


def test_matching_rejects_odd_cycles():
    g = graph_from_edges([("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])
    with pytest.raises(ValueError, match="bipartite"):
        min_weight_perfect_matching(g)


def test_matching_covers_every_node_exactly_once(rng):
    for _ in range(30):
        g = _random_bipartite(rng)
        result = min_weight_perfect_matching(g)
        if result is INFEASIBLE:
            continue
        seen = [n for pair in result.pairs for n in pair]
        assert sorted(seen) == sorted(g.nodes())


def _random_bipartite(rng: random.Random, max_side: int = 6) -> Graph:
    left = rng.randint(1, max_side)
    right = rng.randint(1, max_side)
    g = Graph()
    for i in range(left):
        g.add_node(f"l{i}")
    for i in range(right):
        g.add_node(f"r{i}")
    for i in range(left):
        for j in range(right):
            if rng.random() < 0.5:
                g.add_edge(f"l{i}", f"r{j}", rng.randint(0, 12))
    return g.freeze()


def test_matching_agrees_with_exhaustive_enumeration(rng):
    agree = infeasible = 0
    for _ in range(120):
        g = _random_bipartite(rng)
        if g.node_count > 12:
            continue
        expected = enumerate_min_perfect_matching(g)
        result = min_weight_perfect_matching(g)
        if expected is None:
            assert result is INFEASIBLE
            infeasible += 1
        else:
            assert result.weight == expected
            agree += 1
    assert agree > 10 and infeasible > 5


def test_matching_handles_zero_weight_edges(rng):
    g = graph_from_edges([("a", "b", 0), ("b", "c", 0), ("c", "d", 0), ("d", "a", 5)])
    assert min_weight_perfect_matching(g).weight == 0


# -- whole-graph helpers -------------------------------------------------------


def test_directed_girth_and_acyclicity():
    g = Graph(directed=True)
    for n in "abc":
        g.add_node(n)
    g.add_edge("a", "b", 2)
    g.add_edge("b", "c", 3)
    g.freeze()
    assert not has_directed_cycle(g)
    assert directed_girth(g) is None

    h = Graph(directed=True)
    for n in "abc":
        h.add_node(n)
    h.add_edge("a", "b", 2)
    h.add_edge("b", "c", 3)
    h.add_edge("c", "a", 4)
    h.freeze()
    assert has_directed_cycle(h)
    assert directed_girth(h) == 9


def test_diameter_info_simple_path():
    g = Graph()
    for n in "abc":
        g.add_node(n)
    g.add_edge("a", "b", 1)
    g.add_edge("b", "c", 2)
    g.freeze()
    value, pairs = diameter_info(g)
    assert value == 3
    assert pairs == [("a", "c")]
