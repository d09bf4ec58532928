"""Brute-force reference implementations the reduction drivers are checked
against.

Nothing here is clever on purpose: the tropical product is a triple loop,
the OuMv answer is direct enumeration, and the matching solver is a plain
successive-shortest-augmenting-path method for bipartite graphs. Their job
is obviousness, not speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heappop, heappush

from dynagrid.graph import Graph
from dynagrid.matrices import dims


def min_plus_product(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    """C[i][j] = min over k of a[i][k] + b[k][j], evaluated entry by entry."""
    n, inner = dims(a)
    inner_b, cols = dims(b)
    if inner != inner_b:
        raise ValueError(f"inner dimensions disagree: {inner} vs {inner_b}")
    out = []
    for i in range(n):
        row_a = a[i]
        row = []
        for j in range(cols):
            row.append(min(row_a[k] + b[k][j] for k in range(inner)))
        out.append(row)
    return out


def oumv_answer(m: list[list[int]], u: list[int], v: list[int]) -> int:
    """1 iff some (k, j) has u[k] = v[j] = m[k][j] = 1."""
    rows, cols = dims(m)
    if len(u) != rows or len(v) != cols:
        raise ValueError("vector dimensions disagree with matrix")
    for k in range(rows):
        if u[k]:
            row = m[k]
            for j in range(cols):
                if v[j] and row[j]:
                    return 1
    return 0


def oumv_answer_via_matvec(m: list[list[int]], u: list[int], v: list[int]) -> int:
    """Same answer computed as [u^T (M v) >= 1]; used as a second opinion."""
    rows, cols = dims(m)
    if len(u) != rows or len(v) != cols:
        raise ValueError("vector dimensions disagree with matrix")
    mv = [1 if any(m[k][j] and v[j] for j in range(cols)) else 0 for k in range(rows)]
    return 1 if any(u[k] and mv[k] for k in range(rows)) else 0


# -- whole-graph brute-force measurements ------------------------------------


def directed_girth(g: Graph):
    """Length of the shortest directed cycle, or None if the graph is acyclic.

    Brute force: for every edge (u, v, w), w plus the v -> u distance.
    """
    from dynagrid.graph import dijkstra

    if not g.directed:
        raise ValueError("directed graphs only")
    best = None
    for u, v, w in g.edges():
        back = dijkstra(g, v).distance(u)
        if back is not None:
            cycle = w + back
            if best is None or cycle < best:
                best = cycle
    return best


def has_directed_cycle(g: Graph) -> bool:
    """Kahn's algorithm; True iff some directed cycle exists."""
    if not g.directed:
        raise ValueError("directed graphs only")
    n = g.node_count
    out: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for u, v, _ in g.indexed_edges():
        out[u].append(v)
        indeg[v] += 1
    queue = [i for i in range(n) if indeg[i] == 0]
    seen = 0
    while queue:
        x = queue.pop()
        seen += 1
        for y in out[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    return seen != n


def diameter_info(g: Graph) -> tuple[int, list[tuple[str, str]]]:
    """Largest finite pairwise distance and every pair attaining it.

    Runs Dijkstra from every node; pairs are reported unordered for
    undirected graphs.
    """
    from dynagrid.graph import dijkstra

    best = -1
    argmax: list[tuple[str, str]] = []
    names = g.nodes()
    for u in names:
        dm = dijkstra(g, u)
        for v in names:
            if u == v or (not g.directed and u > v):
                continue
            d = dm.distance(v)
            if d is None:
                continue
            if d > best:
                best, argmax = d, [(u, v)]
            elif d == best:
                argmax.append((u, v))
    return best, argmax


# -- bipartite minimum-weight perfect matching ------------------------------


class _Infeasible:
    def __repr__(self) -> str:
        return "INFEASIBLE"

    def __bool__(self) -> bool:
        return False


INFEASIBLE = _Infeasible()


@dataclass
class MatchingResult:
    weight: int
    pairs: list[tuple[str, str]]


def _two_color(g: Graph) -> tuple[list[int], list[list[int]]]:
    """Color nodes 0/1 per component via BFS; reject odd cycles."""
    n = g.node_count
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v, _ in g.indexed_edges():
        adj[u].append(v)
        adj[v].append(u)
    color = [-1] * n
    components: list[list[int]] = []
    for start in range(n):
        if color[start] != -1:
            continue
        comp = [start]
        color[start] = 0
        queue = [start]
        while queue:
            x = queue.pop()
            for y in adj[x]:
                if color[y] == -1:
                    color[y] = color[x] ^ 1
                    comp.append(y)
                    queue.append(y)
                elif color[y] == color[x]:
                    raise ValueError("graph is not bipartite")
        components.append(comp)
    return color, components


def min_weight_perfect_matching(g: Graph):
    """Minimum-total-weight perfect matching, or INFEASIBLE.

    Bipartite graphs only (non-bipartite input raises ValueError). Uses
    successive shortest augmenting paths with potentials, so weights must
    be non-negative, which the Graph type already guarantees.
    """
    if g.directed:
        raise ValueError("matching is defined on undirected graphs")
    n = g.node_count
    if n == 0:
        return MatchingResult(0, [])
    color, components = _two_color(g)
    if n % 2 == 1:
        return INFEASIBLE
    for comp in components:
        left = sum(1 for x in comp if color[x] == 0)
        if 2 * left != len(comp):
            return INFEASIBLE

    lefts = [i for i in range(n) if color[i] == 0]
    left_id = {node: i for i, node in enumerate(lefts)}
    rights = [i for i in range(n) if color[i] == 1]
    right_id = {node: i for i, node in enumerate(rights)}
    nl = len(lefts)

    adj: list[list[tuple[int, int]]] = [[] for _ in range(nl)]
    for u, v, w in g.indexed_edges():
        if color[u] == 1:
            u, v = v, u
        adj[left_id[u]].append((right_id[v], w))

    match_l = [-1] * nl
    match_r = [-1] * nl
    pot_l = [0] * nl
    pot_r = [0] * nl

    for s in range(nl):
        dist_r = [-1] * nl
        parent_r = [-1] * nl
        settled = [False] * nl
        dist_l = {s: 0}
        heap: list[tuple[int, int, int]] = []
        for r, w in adj[s]:
            rc = w - pot_l[s] - pot_r[r]
            if dist_r[r] == -1 or rc < dist_r[r]:
                dist_r[r] = rc
                parent_r[r] = s
                heappush(heap, (rc, r, s))
        end = -1
        while heap:
            d, r, from_l = heappop(heap)
            if settled[r] or d > dist_r[r]:
                continue
            settled[r] = True
            parent_r[r] = from_l
            if match_r[r] == -1:
                end = r
                break
            l2 = match_r[r]
            dist_l[l2] = d
            for r2, w2 in adj[l2]:
                if settled[r2]:
                    continue
                nd = d + w2 - pot_l[l2] - pot_r[r2]
                if dist_r[r2] == -1 or nd < dist_r[r2]:
                    dist_r[r2] = nd
                    parent_r[r2] = l2
                    heappush(heap, (nd, r2, l2))
        if end == -1:
            return INFEASIBLE

        big_d = dist_r[end]
        for left, dl in dist_l.items():
            pot_l[left] += big_d - dl
        for r in range(nl):
            if settled[r]:
                pot_r[r] += dist_r[r] - big_d
        # flip the augmenting path
        r = end
        while r != -1:
            left = parent_r[r]
            nxt = match_l[left]
            match_l[left] = r
            match_r[r] = left
            r = nxt

    pairs = []
    total = 0
    for li, r in enumerate(match_l):
        u, v = lefts[li], rights[r]
        pairs.append((g.name_of(u), g.name_of(v)))
        total += g.weight(g.name_of(u), g.name_of(v))
    return MatchingResult(total, pairs)
