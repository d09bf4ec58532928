"""Shared brute-force oracles and generators for the test suite.

These deliberately avoid the package's own shortest-path and matching
code paths so that every equality check is a genuine cross-check.
"""

from __future__ import annotations

import itertools
import random

import pytest

from dynagrid.graph import Graph


def bellman_ford(g: Graph, source: str) -> dict[str, int | None]:
    """Reference single-source distances by edge relaxation to fixpoint."""
    names = g.nodes()
    dist: dict[str, int | None] = {n: None for n in names}
    dist[source] = 0
    edges = g.edges()
    for _ in range(g.node_count):
        changed = False
        for u, v, w in edges:
            du, dv = dist[u], dist[v]
            if du is not None and (dv is None or du + w < dv):
                dist[v] = du + w
                changed = True
            if not g.directed:
                du, dv = dist[v], dist[u]
                if du is not None and (dv is None or du + w < dv):
                    dist[u] = du + w
                    changed = True
        if not changed:
            break
    return dist


def random_graph(rng: random.Random, max_nodes: int = 30, max_weight: int = 20,
                 directed: bool = False, edge_prob: float = 0.3) -> Graph:
    n = rng.randint(1, max_nodes)
    g = Graph(directed=directed)
    names = [f"n{i}" for i in range(n)]
    for name in names:
        g.add_node(name)
    for i in range(n):
        for j in range(n):
            if i == j or (not directed and i > j):
                continue
            if rng.random() < edge_prob:
                g.add_edge(names[i], names[j], rng.randint(0, max_weight))
    return g.freeze()


def enumerate_min_perfect_matching(g: Graph):
    """Exhaustive minimum-weight perfect matching; None if infeasible.

    Exponential; callers keep graphs at a dozen nodes or fewer.
    """
    nodes = sorted(g.nodes())
    if len(nodes) % 2 == 1:
        return None
    adj: dict[str, dict[str, int]] = {n: {} for n in nodes}
    for u, v, w in g.edges():
        adj[u][v] = w
        adj[v][u] = w

    best: list[int | None] = [None]

    def extend(remaining: tuple[str, ...], total: int) -> None:
        if not remaining:
            if best[0] is None or total < best[0]:
                best[0] = total
            return
        first = remaining[0]
        rest = remaining[1:]
        for partner in rest:
            w = adj[first].get(partner)
            if w is None:
                continue
            extend(tuple(x for x in rest if x != partner), total + w)

    extend(tuple(nodes), 0)
    return best[0]


def enumerate_all_matchings_max(g: Graph) -> tuple[int, int]:
    """(best weight, matched node count of a best matching) over ALL matchings."""
    edges = g.edges()
    best = (0, 0)

    def extend(idx: int, used: set[str], total: int, size: int) -> None:
        nonlocal best
        if (total, size) > best:
            best = (total, size)
        for i in range(idx, len(edges)):
            u, v, w = edges[i]
            if u not in used and v not in used:
                extend(i + 1, used | {u, v}, total + w, size + 2)

    extend(0, set(), 0, 0)
    return best


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xD1CE)
