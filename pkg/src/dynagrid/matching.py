"""Split-node double grid: the product reduction phrased as matching queries.

Every node of the weighted double grid is replaced by a zero-weight pair
and each original edge is rewired between facing pair halves, which makes
the graph bipartite with sides {up, left} and {down, right}. Without the
two query edges the graph has a unique perfect matching of weight zero;
attaching s and t to one column pair forces a minimum-weight perfect
matching whose weight equals the corresponding terminal distance.
"""

from __future__ import annotations

import random
import time
from collections import deque
from dataclasses import dataclass
from enum import Enum

from dynagrid.engines import CostLedger
from dynagrid.graph import Graph
from dynagrid.gridembed import assemble_double_grid
from dynagrid.oracles import INFEASIBLE, min_weight_perfect_matching
from dynagrid.apsp import PhaseSchedule, ReductionIntegrityError, _validated_schedule, recover_entry

_UP_DOWN_ROLES = {"a", "u", "v", "x"}


def _half_names(name: str, role: str) -> tuple[str, str]:
    if role in _UP_DOWN_ROLES:
        return f"{name}^u", f"{name}^d"
    return f"{name}^l", f"{name}^r"


def _attach_end(name: str, role: str, drow: int, dcol: int) -> str:
    """Which half of a split node an edge leaving in (drow, dcol) uses.

    In the left grid, routes enter nodes from above or the left and leave
    downward or to the right, so those direction pairs get opposite
    halves. In the mirrored grid routes climb (enter from below or the
    left), which flips the vertical assignment of the up/down-split roles;
    the left/right-split roles keep the geometric rule so the crossing
    edges join b^r to b'^l. Either way every edge crosses between the
    {up, left} and {down, right} sides.
    """
    mirrored = "'" in name
    if role in _UP_DOWN_ROLES:
        if mirrored:
            first = dcol < 0 or drow > 0  # left or down
        else:
            first = dcol < 0 or drow < 0  # left or up
        return f"{name}^u" if first else f"{name}^d"
    if drow != 0:
        if mirrored:
            raise AssertionError("mirrored grid has no vertical edges at w/b nodes")
        return f"{name}^l" if drow < 0 else f"{name}^r"
    return f"{name}^l" if dcol < 0 else f"{name}^r"


@dataclass
class SplitInstance:
    """Bipartite split of a double grid plus the two reserved query nodes."""

    graph: Graph
    rows: int
    cols: int
    bound: int
    crossing_shift: int
    s: str = "s"
    t: str = "t"

    def a_up(self, j: int) -> str:
        return f"a{j}^u"

    def a_prime_free(self, j: int) -> str:
        """The mirrored a-half not taken by its grid edge; t attaches here."""
        return f"a'{j}^d"

    def crossing_edge(self, k: int) -> tuple[str, str]:
        return (f"b{k}^r", f"b'{k}^l")

    def query_edges(self, j: int) -> list[tuple[str, str]]:
        return [(self.s, self.a_up(j)),
                (self.t, self.a_prime_free(self.cols - j + 1))]

    def core_graph(self) -> Graph:
        """The split double grid without the reserved isolated s and t."""
        g = Graph()
        src = self.graph
        for name in src.nodes():
            if name not in (self.s, self.t):
                g.add_node(name, role=src.role(name), ij=src.matrix_ij(name))
        for u, v, w in src.edges():
            g.add_edge(u, v, w)
        return g.freeze()


def build_split_instance(b_mat, bound: int, crossing_shift: int = 0) -> SplitInstance:
    """Split every double-grid node into a zero-weight pair and rewire."""
    rg = assemble_double_grid(b_mat, bound, crossing_shift)
    src = rg.graph
    g = Graph()
    for name in src.nodes():
        role = src.role(name)
        ij = src.matrix_ij(name)
        first, second = _half_names(name, role)
        g.add_node(first, role=role, ij=ij)
        g.add_node(second, role=role, ij=ij)
        g.add_edge(first, second, 0)
    for u, v, w in src.edges():
        cu, cv = src.coord(u), src.coord(v)
        end_u = _attach_end(u, src.role(u), cv.row - cu.row, cv.col - cu.col)
        end_v = _attach_end(v, src.role(v), cu.row - cv.row, cu.col - cv.col)
        g.add_edge(end_u, end_v, w)
    g.add_node("s", role="s")
    g.add_node("t", role="t")
    g.freeze()
    return SplitInstance(g, rg.rows, rg.cols, bound, crossing_shift)


def bipartition_sides(g: Graph) -> tuple[set[str], set[str]]:
    """The {up, left} and {down, right} halves, by name suffix."""
    first = {n for n in g.nodes() if n.endswith("^u") or n.endswith("^l")}
    second = {n for n in g.nodes() if n.endswith("^d") or n.endswith("^r")}
    return first, second


# -- unique-matching verification by peeling ---------------------------------


@dataclass
class PeelReport:
    kind: str  # "unique" | "not_unique" | "none"
    weight: int | None
    forced: list[tuple[str, str, int]]

    def forced_pairs(self) -> set[frozenset[str]]:
        return {frozenset((u, v)) for u, v, _ in self.forced}


def verify_unique_pm(g: Graph, rng: random.Random | None = None) -> PeelReport:
    """Peel forced degree-1 edges; classify the perfect-matching structure.

    "unique" with the matching weight if peeling consumes the whole graph;
    "none" if some node runs out of partners; "not_unique" if peeling
    stalls on a min-degree-2 remainder that still has a perfect matching
    (for bipartite graphs such a remainder always has more than one). The
    optional rng shuffles processing order; the verdict must not change.
    """
    adj: dict[str, dict[str, int]] = {n: {} for n in g.nodes()}
    for u, v, w in g.edges():
        adj[u][v] = w
        adj[v][u] = w

    order = list(adj)
    if rng is not None:
        rng.shuffle(order)
    queue = deque(n for n in order if len(adj[n]) == 1)
    forced: list[tuple[str, str, int]] = []
    alive = set(adj)

    while queue:
        z = queue.popleft()
        if z not in alive or len(adj[z]) != 1:
            continue
        q, w = next(iter(adj[z].items()))
        forced.append((z, q, w))
        for node in (z, q):
            alive.discard(node)
            for other in adj[node]:
                if other in alive:
                    adj[other].pop(node, None)
                    if len(adj[other]) == 1:
                        queue.append(other)
            adj[node] = {}

    if not alive:
        return PeelReport("unique", sum(w for _, _, w in forced), forced)
    if any(len(adj[n]) == 0 for n in alive):
        return PeelReport("none", None, forced)

    rest = Graph()
    for n in alive:
        rest.add_node(n)
    for n in alive:
        for m, w in adj[n].items():
            if n < m:
                rest.add_edge(n, m, w)
    feasible = min_weight_perfect_matching(rest.freeze())
    if feasible is INFEASIBLE:
        return PeelReport("none", None, forced)
    return PeelReport("not_unique", None, forced)


# -- reduction driver ---------------------------------------------------------


class MatchingObjective(Enum):
    MIN = "min"
    MAX = "max"


@dataclass
class MatchingRunResult:
    product: list[list[int]]
    ledger: CostLedger
    schedule: PhaseSchedule
    instance: SplitInstance
    y: int | None
    matching_weights: list[list[int]]
    recovered_distances: list[list[int]]
    matchings: list[list[list[tuple[str, str]]]] | None = None


def choose_heavy_weight(n_alpha: int, n_beta: int, bound: int,
                        base_shift: int = 0) -> int:
    """Even weight strictly above every possible queried distance."""
    y = 1 + PhaseSchedule(1, n_alpha, n_beta, bound, base_shift).offset + 2 * bound
    return y if y % 2 == 0 else y + 1


def run_matching_reduction(a, b, bound: int,
                           objective: MatchingObjective = MatchingObjective.MIN,
                           y: int | None = None, *, base_shift: int = 0,
                           collect_matchings: bool = False) -> MatchingRunResult:
    """Tropical product through minimum or maximum weight perfect matchings.

    MIN: per query, attach s and t with weight-0 edges; the minimum-weight
    perfect matching weighs exactly the terminal distance. MAX: flip every
    weight to y minus itself and give the two query edges weight y*y/2
    each; the maximum-weight perfect matching then weighs
    y**2 + (N-4)/2 * y - distance, with N the node count including s, t.
    """
    schedule = _validated_schedule(a, b, bound, base_shift)
    inst = build_split_instance(b, bound, base_shift)
    n_nodes = inst.graph.node_count

    if objective is MatchingObjective.MAX:
        if y is None:
            y = choose_heavy_weight(schedule.n_alpha, schedule.n_beta, bound, base_shift)
        if y % 2 == 1:
            raise ValueError("y must be even so the two query edges get y*y/2 each")
        if y <= schedule.offset + 2 * bound:
            raise ValueError(f"y={y} does not dominate the distance range")
    else:
        y = None

    edges: dict[tuple[str, str], int] = {(u, v): w for u, v, w in inst.graph.edges()}
    if objective is MatchingObjective.MAX:
        edges = {pair: y - w for pair, w in edges.items()}
    query_weight = 0 if objective is MatchingObjective.MIN else y * y // 2

    ledger = CostLedger()
    product: list[list[int]] = []
    weights: list[list[int]] = []
    distances: list[list[int]] = []
    matchings: list[list[list[tuple[str, str]]]] | None = \
        [] if collect_matchings else None

    def timed(fn, counter, ns):
        t0 = time.perf_counter_ns()
        out = fn()
        setattr(ledger, ns, getattr(ledger, ns) + time.perf_counter_ns() - t0)
        setattr(ledger, counter, getattr(ledger, counter) + 1)
        return out

    for i in range(1, schedule.n + 1):
        row = a[i - 1]
        for k in range(1, schedule.n_beta + 1):
            w = schedule.crossing_weight(row, k)
            if objective is MatchingObjective.MAX:
                w = y - w
            key = inst.crossing_edge(k)

            def do_reweight(key=key, w=w):
                edges[key] = w

            timed(do_reweight, "weight_updates", "weight_update_ns")
        out_row, w_row, d_row = [], [], []
        m_row: list[list[tuple[str, str]]] = []
        for j in range(1, schedule.n_alpha + 1):
            q_edges = inst.query_edges(j)
            for e in q_edges:
                def do_insert(e=e):
                    edges[e] = query_weight

                timed(do_insert, "insertions", "insertion_ns")

            def solve():
                g = Graph()
                for name in inst.graph.nodes():
                    g.add_node(name)
                for (u, v), w in edges.items():
                    g.add_edge(u, v, w)
                return _solve_pm(g.freeze(), objective)

            value, pairs = timed(solve, "queries", "query_ns")
            for e in q_edges:
                def do_delete(e=e):
                    del edges[e]

                timed(do_delete, "deletions", "deletion_ns")
            if objective is MatchingObjective.MIN:
                d = value
            else:
                d = y * y + (n_nodes - 4) // 2 * y - value
            out_row.append(recover_entry(d, schedule.n_alpha, schedule.n_beta,
                                         bound, base_shift))
            w_row.append(value)
            d_row.append(d)
            if matchings is not None:
                m_row.append(sorted(pairs))
        product.append(out_row)
        weights.append(w_row)
        distances.append(d_row)
        if matchings is not None:
            matchings.append(m_row)
    return MatchingRunResult(product, ledger, schedule, inst, y, weights,
                             distances, matchings)


def _solve_pm(g: Graph, objective: MatchingObjective) -> tuple[int, list[tuple[str, str]]]:
    if objective is MatchingObjective.MIN:
        result = min_weight_perfect_matching(g)
        if result is INFEASIBLE:
            raise ReductionIntegrityError("no perfect matching in a query graph")
        return result.weight, result.pairs
    return max_weight_perfect_matching(g)


def max_weight_perfect_matching(g: Graph) -> tuple[int, list[tuple[str, str]]]:
    """Maximum-weight perfect matching via the min solver on flipped costs."""
    big = max(w for _, _, w in g.edges())
    flipped = Graph()
    for name in g.nodes():
        flipped.add_node(name)
    for u, v, w in g.edges():
        flipped.add_edge(u, v, big - w)
    result = min_weight_perfect_matching(flipped.freeze())
    if result is INFEASIBLE:
        raise ReductionIntegrityError("no perfect matching in a query graph")
    total = sum(g.weight(u, v) for u, v in result.pairs)
    return total, result.pairs


def max_weight_perfect_matching_value(g: Graph) -> int:
    return max_weight_perfect_matching(g)[0]
