"""Grid gadget constructions and their closed-form terminal distances.

A matrix is embedded as a lattice-shaped weighted graph whose top
terminals ("a" nodes, one per column) and right terminals ("b" nodes, one
per row) are at exactly known distances: the distance from a_j to b_k
reveals the matrix entry at (k, j). A second, shortcut-free copy placed
mirrored to the right of the first normalizes those distances so that
crossing-edge weights can stay independent of the queried column.

Every closed form here is verified against Dijkstra by the test suite
before anything downstream relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass

from dynagrid.graph import Graph, GridCoord
from dynagrid.matrices import dims, ones, validate_matrix

INT64_MAX = 2**63 - 1


def check_distance_budget(n_alpha: int, n_beta: int, bound: int, extra: int = 0) -> None:
    """Reject instances whose worst-case distance cannot live in int64."""
    worst = bound * bound * 4 * n_beta * (n_alpha + 1) + 2 * bound + extra
    if worst > INT64_MAX:
        raise OverflowError(
            f"worst-case distance {worst} exceeds the signed 64-bit range"
        )


# -- closed forms ------------------------------------------------------------


def _check_jk(rows: int, cols: int, j: int, k: int) -> None:
    if not 1 <= j <= cols:
        raise ValueError(f"column index j={j} outside 1..{cols}")
    if not 1 <= k <= rows:
        raise ValueError(f"row index k={k} outside 1..{rows}")


def boolean_terminal_distance(rows: int, cols: int, j: int, k: int, entry: int) -> int:
    """Expected a_j -> b_k distance in a boolean embedding."""
    _check_jk(rows, cols, j, k)
    return 2 * rows * (cols - j + 1) + 2 * j * k - (1 if entry else 0)


def weighted_terminal_distance(rows: int, cols: int, j: int, k: int,
                               entry: int, bound: int) -> int:
    """Expected a_j -> b_k distance in a weighted embedding."""
    _check_jk(rows, cols, j, k)
    return bound * bound * (2 * rows * (cols - j + 1) + 2 * j * k - 1) + entry


def scaffold_terminal_distance(rows: int, cols: int, j: int, k: int,
                               scale: int = 1) -> int:
    """Expected a_j -> b_k distance in a shortcut-free (mirrored) copy."""
    _check_jk(rows, cols, j, k)
    return scale * (2 * rows * (cols - j + 1) + 2 * j * k)


def boolean_inner_distance(rows: int, cols: int, i: int, j: int, k: int,
                           entry: int) -> int:
    """Expected u_{i,j} -> b_k distance in a boolean embedding, for i <= k."""
    _check_jk(rows, cols, j, k)
    if not 1 <= i <= k:
        raise ValueError(f"row index i={i} outside 1..k={k}")
    base = (k - i) * 2 * j + 2 * rows * (cols - j + 1)
    if i < k and entry:
        return base - 1
    return base


def closed_form_distance(rows: int, cols: int, j: int, k: int,
                         entry: int | None = None, bound: int | None = None,
                         mirrored: bool = False) -> int:
    """Umbrella over the three a_j -> b_k forms, selected by arguments."""
    if mirrored:
        scale = bound * bound if bound is not None else 1
        return scaffold_terminal_distance(rows, cols, j, k, scale)
    if entry is None:
        raise ValueError("entry is required unless mirrored=True")
    if bound is None:
        return boolean_terminal_distance(rows, cols, j, k, entry)
    return weighted_terminal_distance(rows, cols, j, k, entry, bound)


def crossing_base_weight(n_alpha: int, n_beta: int, k: int, bound: int) -> int:
    """Weight placed on the k-th crossing edge before adding a row entry."""
    if not 1 <= k <= n_beta:
        raise ValueError(f"crossing index k={k} outside 1..{n_beta}")
    return bound * bound * 2 * (n_alpha + 1) * (n_beta - k)


def recovery_offset(n_alpha: int, n_beta: int, bound: int) -> int:
    """Constant part of every queried distance in the product reduction."""
    return bound * bound * (4 * n_beta * (n_alpha + 1) - 1)


def unit_threshold(n_alpha: int, n_beta: int) -> int:
    """Distance hit exactly when a queried unit-weight route exists."""
    return 4 * n_beta * (n_alpha + 1) - 1


def connector_length(n_alpha: int, n_beta: int, k: int) -> int:
    """Unit-edge count of the k-th connecting path in the unit instance."""
    if not 1 <= k <= n_beta:
        raise ValueError(f"connector index k={k} outside 1..{n_beta}")
    return 2 * (n_alpha + 1) * (n_beta - k)


# -- constructions -----------------------------------------------------------


@dataclass
class GridEmbedding:
    """One embedded matrix: the graph plus handles to its named nodes."""

    graph: Graph
    rows: int
    cols: int
    scale: int
    mirrored: bool
    shortcuts_present: bool
    _prime: str = ""

    def a(self, j: int) -> str:
        if not 1 <= j <= self.cols:
            raise ValueError(f"terminal a index {j} outside 1..{self.cols}")
        return f"a{self._prime}{j}"

    def b(self, k: int) -> str:
        if not 1 <= k <= self.rows:
            raise ValueError(f"terminal b index {k} outside 1..{self.rows}")
        return f"b{self._prime}{k}"

    def u(self, i: int, j: int) -> str:
        return f"u{self._prime}{i},{j}"

    def v(self, i: int, j: int) -> str:
        return f"v{self._prime}{i},{j}"

    def w(self, i: int, j: int) -> str:
        return f"w{self._prime}{i},{j}"

    def x(self, i: int, j: int) -> str | None:
        name = f"x{self._prime}{i},{j}"
        return name if self.graph.has_node(name) else None


def _build_grid(rows: int, cols: int, x_mask: list[list[int]],
                scale: int, shortcut_extra: list[list[int]] | None,
                prime: bool = False) -> GridEmbedding:
    """Generator behind all embeddings; weights follow the fixed pattern.

    Per cell (i, j): the vertical entry edge into u weighs 2j-1, the two
    halves of the horizontal exit weigh 2 and 2R-2, shortcut edges weigh 1
    (plus a per-cell extra on the upper one), everything scaled by
    ``scale``. Terminal attachment edges reuse the vertical/horizontal
    weights of their row/column.
    """
    g = Graph()
    p = "'" if prime else ""
    emb = GridEmbedding(g, rows, cols, scale, prime, any(any(r) for r in x_mask), p)

    for j in range(1, cols + 1):
        g.add_node(emb.a(j), role="a", ij=(0, j), coord=GridCoord(0, 2 * j))
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            g.add_node(emb.u(i, j), role="u", ij=(i, j), coord=GridCoord(2 * i, 2 * j))
            g.add_node(emb.v(i, j), role="v", ij=(i, j), coord=GridCoord(2 * i - 1, 2 * j))
            g.add_node(emb.w(i, j), role="w", ij=(i, j), coord=GridCoord(2 * i, 2 * j + 1))
            if x_mask[i - 1][j - 1]:
                g.add_node(f"x{p}{i},{j}", role="x", ij=(i, j),
                           coord=GridCoord(2 * i - 1, 2 * j + 1))
    for i in range(1, rows + 1):
        g.add_node(emb.b(i), role="b", ij=(i, 0), coord=GridCoord(2 * i, 2 * cols + 2))

    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            above = emb.a(j) if i == 1 else emb.u(i - 1, j)
            g.add_edge(above, emb.v(i, j), (2 * j - 1) * scale)
            g.add_edge(emb.v(i, j), emb.u(i, j), scale)
            g.add_edge(emb.u(i, j), emb.w(i, j), 2 * scale)
            right = emb.b(i) if j == cols else emb.u(i, j + 1)
            g.add_edge(emb.w(i, j), right, (2 * rows - 2) * scale)
            if x_mask[i - 1][j - 1]:
                extra = shortcut_extra[i - 1][j - 1] if shortcut_extra else 0
                g.add_edge(emb.v(i, j), f"x{p}{i},{j}", scale + extra)
                g.add_edge(f"x{p}{i},{j}", emb.w(i, j), scale)

    g.freeze()
    return emb


def embed_boolean(m: list[list[int]]) -> GridEmbedding:
    """Embed a boolean matrix; shortcuts exist exactly at the 1 entries."""
    validate_matrix(m, 1, "boolean matrix")
    rows, cols = dims(m)
    return _build_grid(rows, cols, m, 1, None)


def embed_weighted(m: list[list[int]], bound: int) -> GridEmbedding:
    """Embed an integer matrix with entries in {0, ..., bound}.

    The all-ones boolean embedding scaled by bound**2, with each upper
    shortcut edge carrying its cell's entry on top of the scaled weight.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    validate_matrix(m, bound, "matrix")
    rows, cols = dims(m)
    return _build_grid(rows, cols, ones(rows, cols), bound * bound, m)


def scaffold_grid(rows: int, cols: int, scale: int = 1, prime: bool = True) -> GridEmbedding:
    """Shortcut-free copy used as the mirrored half of a double grid."""
    return _build_grid(rows, cols, [[0] * cols for _ in range(rows)], scale, None,
                       prime=prime)


@dataclass
class ReductionGraph:
    """Two grids side by side, optionally joined by per-row crossing edges.

    The right copy is geometrically mirrored (its b terminals face the left
    grid's) but keeps its own 1-based labels; query pairs match column j on
    the left with column cols-j+1 on the right.
    """

    graph: Graph
    rows: int
    cols: int
    bound: int | None
    crossing_shift: int
    left: GridEmbedding
    right: GridEmbedding
    has_crossing_edges: bool

    def a(self, j: int) -> str:
        return self.left.a(j)

    def a_prime(self, j: int) -> str:
        return self.right.a(j)

    def b(self, k: int) -> str:
        return self.left.b(k)

    def b_prime(self, k: int) -> str:
        return self.right.b(k)

    def crossing_edge(self, k: int) -> tuple[str, str]:
        return (self.b(k), self.b_prime(k))

    def query_pair(self, j: int) -> tuple[str, str]:
        if not 1 <= j <= self.cols:
            raise ValueError(f"query column {j} outside 1..{self.cols}")
        return (self.a(j), self.a_prime(self.cols - j + 1))


def _combine(left: GridEmbedding, right: GridEmbedding,
             crossing_weights: list[int] | None, bound: int | None,
             crossing_shift: int) -> ReductionGraph:
    rows, cols = left.rows, left.cols
    reflect = 4 * cols + 5
    g = Graph()
    for name in left.graph.nodes():
        src = left.graph
        g.add_node(name, role=src.role(name), ij=src.matrix_ij(name), coord=src.coord(name))
    for name in right.graph.nodes():
        src = right.graph
        c = src.coord(name)
        g.add_node(name, role=src.role(name), ij=src.matrix_ij(name),
                   coord=GridCoord(c.row, reflect - c.col))
    for u, v, w in left.graph.edges():
        g.add_edge(u, v, w)
    for u, v, w in right.graph.edges():
        g.add_edge(u, v, w)
    if crossing_weights is not None:
        for k in range(1, rows + 1):
            g.add_edge(left.b(k), right.b(k), crossing_weights[k - 1])
    g.freeze()
    return ReductionGraph(g, rows, cols, bound, crossing_shift, left, right,
                          crossing_weights is not None)


def assemble_double_grid(b_mat: list[list[int]], bound: int,
                         crossing_shift: int = 0) -> ReductionGraph:
    """Weighted double grid with crossing edges at their base weights.

    ``crossing_shift`` adds a constant to every crossing edge (compensated
    at recovery); it exists so ratio experiments can avoid a zero-weight
    crossing edge at k = rows.
    """
    rows, cols = dims(b_mat)
    check_distance_budget(cols, rows, bound, crossing_shift)
    left = embed_weighted(b_mat, bound)
    right = scaffold_grid(rows, cols, bound * bound)
    weights = [crossing_base_weight(cols, rows, k, bound) + crossing_shift
               for k in range(1, rows + 1)]
    return _combine(left, right, weights, bound, crossing_shift)


def assemble_boolean_pair(m: list[list[int]]) -> ReductionGraph:
    """Boolean double grid with no crossing edges (connectors come later)."""
    rows, cols = dims(m)
    left = embed_boolean(m)
    right = scaffold_grid(rows, cols, 1)
    return _combine(left, right, None, None, 0)
