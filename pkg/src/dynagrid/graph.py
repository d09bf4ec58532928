"""Weighted graph model, exact shortest paths, and grid-layout validation.

All weights are non-negative Python ints and all distance arithmetic is
exact; there is no floating point anywhere in the distance path. Graphs are
mutable while being assembled and are frozen by every generator before
being handed out; a frozen graph is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

from dynagrid.sssp import CsrGraph

UNREACHABLE = None


@dataclass(frozen=True)
class GridCoord:
    """Position in the integer lattice (row grows downward)."""

    row: int
    col: int


class Graph:
    """Graph with role-tagged nodes and at most one edge per node pair.

    Roles ("a", "b", "u", "v", "w", "x", "s", "t", "p" for path interior)
    and matrix indices let downstream tools locate terminals after
    serialization; both are optional.
    """

    def __init__(self, directed: bool = False, weight_bound: int | None = None):
        self.directed = directed
        self.weight_bound = weight_bound
        self._names: list[str] = []
        self._index: dict[str, int] = {}
        self._roles: list[str | None] = []
        self._ij: list[tuple[int, int] | None] = []
        self._coords: dict[str, GridCoord] = {}
        self._edges: dict[tuple[int, int], int] = {}
        self._frozen = False
        self._csr: CsrGraph | None = None

    # -- construction -----------------------------------------------------

    def add_node(self, name: str, role: str | None = None,
                 ij: tuple[int, int] | None = None,
                 coord: GridCoord | None = None) -> str:
        self._check_mutable()
        if name in self._index:
            raise ValueError(f"duplicate node {name!r}")
        self._index[name] = len(self._names)
        self._names.append(name)
        self._roles.append(role)
        self._ij.append(ij)
        if coord is not None:
            self._coords[name] = coord
        return name

    def add_edge(self, u: str, v: str, w: int) -> None:
        self._check_mutable()
        key = self._edge_key(u, v)
        if key[0] == key[1]:
            raise ValueError(f"self-loop at {u!r}")
        if key in self._edges:
            raise ValueError(f"duplicate edge ({u!r}, {v!r})")
        self._check_weight(w)
        self._edges[key] = w

    def _check_weight(self, w: int) -> None:
        if not isinstance(w, int) or isinstance(w, bool):
            raise TypeError(f"edge weight must be int, got {w!r}")
        if w < 0:
            raise ValueError(f"negative edge weight {w}")
        if self.weight_bound is not None and w > self.weight_bound:
            raise ValueError(f"edge weight {w} exceeds bound {self.weight_bound}")

    def _check_mutable(self) -> None:
        if self._frozen:
            raise RuntimeError("graph is frozen")

    def freeze(self) -> "Graph":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    # -- lookups ----------------------------------------------------------

    def _edge_key(self, u: str, v: str) -> tuple[int, int]:
        ui, vi = self._index[u], self._index[v]
        if not self.directed and ui > vi:
            ui, vi = vi, ui
        return (ui, vi)

    @property
    def node_count(self) -> int:
        return len(self._names)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def nodes(self) -> list[str]:
        return list(self._names)

    def has_node(self, name: str) -> bool:
        return name in self._index

    def index_of(self, name: str) -> int:
        return self._index[name]

    def name_of(self, idx: int) -> str:
        return self._names[idx]

    def role(self, name: str) -> str | None:
        return self._roles[self._index[name]]

    def matrix_ij(self, name: str) -> tuple[int, int] | None:
        return self._ij[self._index[name]]

    def coord(self, name: str) -> GridCoord | None:
        return self._coords.get(name)

    def coords(self) -> dict[str, GridCoord]:
        return dict(self._coords)

    def has_edge(self, u: str, v: str) -> bool:
        return self._edge_key(u, v) in self._edges

    def weight(self, u: str, v: str) -> int:
        key = self._edge_key(u, v)
        if key not in self._edges:
            raise KeyError(f"no edge ({u!r}, {v!r})")
        return self._edges[key]

    def edges(self) -> list[tuple[str, str, int]]:
        """Edges as (u, v, w) name triples, in insertion order."""
        return [(self._names[a], self._names[b], w) for (a, b), w in self._edges.items()]

    def indexed_edges(self) -> list[tuple[int, int, int]]:
        return [(a, b, w) for (a, b), w in self._edges.items()]

    def total_edge_weight(self) -> int:
        return sum(self._edges.values())

    def degree(self, name: str) -> int:
        i = self._index[name]
        n = 0
        for a, b in self._edges:
            if a == i or b == i:
                n += 1
        return n

    # -- kernels ----------------------------------------------------------

    def csr(self, kernel: str | None = None) -> CsrGraph:
        """CSR view; cached on frozen graphs for the default kernel."""
        if self._frozen and kernel is None:
            if self._csr is None:
                self._csr = CsrGraph(self.node_count, self.indexed_edges(),
                                     directed=self.directed)
            return self._csr
        return CsrGraph(self.node_count, self.indexed_edges(),
                        directed=self.directed, kernel=kernel)


class DistanceMap:
    """Exact single-source distances over a fixed graph snapshot."""

    def __init__(self, graph: Graph, source: str, dist_by_index):
        self.source = source
        self._graph = graph
        self._dist = dist_by_index

    def distance(self, node: str):
        d = self._dist[self._graph.index_of(node)]
        return UNREACHABLE if d < 0 else d

    def as_dict(self) -> dict[str, int | None]:
        return {name: (None if self._dist[i] < 0 else self._dist[i])
                for i, name in enumerate(self._graph.nodes())}


def dijkstra(g: Graph, source: str) -> DistanceMap:
    """Exact distances from source; ties never affect reported distances."""
    src = g.index_of(source)
    return DistanceMap(g, source, g.csr().sssp(src))


@dataclass
class ValidationReport:
    """Outcome of the grid-subgraph check; valid iff both lists are empty."""

    duplicate_positions: list[tuple[str, str]]
    violating_edges: list[tuple[str, str]]

    @property
    def valid(self) -> bool:
        return not self.duplicate_positions and not self.violating_edges


def validate_grid_subgraph(g: Graph, coords: dict[str, GridCoord] | None = None) -> ValidationReport:
    """Check that coords are injective and every edge is a unit lattice step.

    A VALID report certifies the graph is a subgraph of the infinite grid
    (and therefore planar). Raises ValueError naming the first node that
    has no coordinate.
    """
    if coords is None:
        coords = g.coords()
    for name in g.nodes():
        if name not in coords:
            raise ValueError(f"missing coordinate for node {name!r}")

    seen: dict[tuple[int, int], str] = {}
    duplicates: list[tuple[str, str]] = []
    for name in g.nodes():
        c = coords[name]
        key = (c.row, c.col)
        if key in seen:
            duplicates.append((seen[key], name))
        else:
            seen[key] = name

    violations: list[tuple[str, str]] = []
    for u, v, _ in g.edges():
        cu, cv = coords[u], coords[v]
        if abs(cu.row - cv.row) + abs(cu.col - cv.col) != 1:
            violations.append((u, v))
    return ValidationReport(duplicates, violations)
