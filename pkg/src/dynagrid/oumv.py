"""Unit-weight instance answering online vector-pair products.

The boolean double grid is subdivided so every edge becomes a chain of
weight-1 edges (weight-0 edges contract their endpoints into one node).
Each row k gets a connecting path of unit edges between its two b
terminals whose length makes the total through-k route independent of k;
detaching one or two boundary edges per row gates that route. A phase
inserts the gate edges for the rows selected by u, queries one terminal
pair per column selected by v, and removes the gate edges again. A query
hits the threshold exactly when some connected row has a 1 in the queried
column, and is strictly larger (or unreachable) otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from dynagrid.engines import CostLedger, CountingEngine, ModeViolationError, UpdateMode, make_engine
from dynagrid.graph import UNREACHABLE, Graph
from dynagrid.gridembed import assemble_boolean_pair, connector_length, unit_threshold
from dynagrid.matrices import dims, validate_matrix

_ROLE_ORDER = {"a": 0, "b": 1, "u": 2, "v": 3, "w": 4, "x": 5}


class NodeBudgetError(RuntimeError):
    """Subdivided instance would exceed the configured node budget."""


@dataclass
class UnitInstance:
    """Subdivided double grid with per-row detachable gate edges.

    ``graph`` is the detached state (no gate edges); ``gate_edges[k-1]``
    lists the unit edges whose insertion opens row k's route.
    """

    graph: Graph
    n_alpha: int
    n_beta: int
    threshold: int
    gate_edges: list[list[tuple[str, str]]]
    a_names: list[str]
    a_prime_names: list[str]
    _all_edges: list[tuple[str, str]]

    def query_pair(self, j: int) -> tuple[str, str]:
        if not 1 <= j <= self.n_alpha:
            raise ValueError(f"query column {j} outside 1..{self.n_alpha}")
        return (self.a_names[j - 1], self.a_prime_names[self.n_alpha - j])

    def connected_graph(self) -> Graph:
        """The instance with every gate edge present (all routes open)."""
        g = Graph()
        src = self.graph
        for name in src.nodes():
            g.add_node(name, role=src.role(name))
        for u, v in self._all_edges:
            g.add_edge(u, v, 1)
        return g.freeze()


class _Merge:
    """Union-find over node names for contracting weight-0 edges."""

    def __init__(self):
        self.parent: dict[str, str] = {}

    def add(self, name: str) -> None:
        self.parent.setdefault(name, name)

    def find(self, name: str) -> str:
        root = name
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[name] != root:
            self.parent[name], name = root, self.parent[name]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _rep_priority(graph: Graph, name: str) -> tuple[int, str]:
    role = graph.role(name) or "z"
    return (_ROLE_ORDER.get(role, 9), name)


def build_unit_instance(m: list[list[int]], max_nodes: int = 2_000_000) -> UnitInstance:
    """Subdivide the boolean double grid of m and wire the row connectors."""
    validate_matrix(m, 1, "boolean matrix")
    n_beta, n_alpha = dims(m)
    base = assemble_boolean_pair(m)
    src = base.graph

    budget = sum(w for _, _, w in src.edges())
    budget += sum(connector_length(n_alpha, n_beta, k) for k in range(1, n_beta + 1))
    budget += src.node_count
    if budget > max_nodes:
        raise NodeBudgetError(f"about {budget} nodes exceeds the budget {max_nodes}")

    merge = _Merge()
    for name in src.nodes():
        merge.add(name)
    for u, v, w in src.edges():
        if w == 0:
            merge.union(u, v)
    for k in range(1, n_beta + 1):
        if connector_length(n_alpha, n_beta, k) == 0:
            merge.union(base.b(k), base.b_prime(k))

    # pick a stable, readable representative name per merged class
    members: dict[str, list[str]] = {}
    for name in src.nodes():
        members.setdefault(merge.find(name), []).append(name)
    rep_name = {root: min(names, key=lambda n: _rep_priority(src, n))
                for root, names in members.items()}

    def rep(name: str) -> str:
        return rep_name[merge.find(name)]

    def side(name: str) -> str:
        return "right" if "'" in name else "left"

    g = Graph()
    roots_added: set[str] = set()
    for name in src.nodes():
        r = rep(name)
        if r not in roots_added:
            roots_added.add(r)
            g.add_node(r, role=src.role(r), ij=src.matrix_ij(r))

    all_edges: list[tuple[str, str]] = []
    # incident[node] = (side of the far endpoint, edge) for junction gating
    incident: dict[str, list[tuple[str, tuple[str, str]]]] = {}

    def add_unit_edge(p: str, q: str, side_p: str, side_q: str) -> None:
        all_edges.append((p, q))
        incident.setdefault(p, []).append((side_q, (p, q)))
        incident.setdefault(q, []).append((side_p, (p, q)))

    def add_chain(p: str, q: str, length: int, label: str, chain_side: str) -> None:
        prev = p
        for step in range(1, length):
            node = g.add_node(f"{label}~{step}", role="p")
            add_unit_edge(prev, node, chain_side, chain_side)
            prev = node
        add_unit_edge(prev, q, chain_side, chain_side)

    for u, v, w in src.edges():
        if w == 0:
            continue
        p, q = rep(u), rep(v)
        if p == q:
            raise AssertionError(f"contraction made ({u}, {v}) a self-loop")
        if w == 1:
            add_unit_edge(p, q, side(u), side(v))
        else:
            add_chain(p, q, w, f"{u}~{v}", side(u))

    gate_edges: list[list[tuple[str, str]]] = []
    for k in range(1, n_beta + 1):
        length = connector_length(n_alpha, n_beta, k)
        if length % 2 != 0:
            raise AssertionError("connector lengths are even by construction")
        bk, bpk = rep(base.b(k)), rep(base.b_prime(k))
        if length > 0:
            first = g.add_node(f"c{k}~1", role="p")
            prev = first
            for step in range(2, length):
                node = g.add_node(f"c{k}~{step}", role="p")
                all_edges.append((prev, node))
                prev = node
            # both attachment edges are the gates for this row
            gates = [(bk, first), (prev, bpk)]
            all_edges.extend(gates)
        else:
            # zero-length connector: the two b terminals were contracted
            # into one junction; gate the boundary unit edges instead.
            junction = bk
            by_side = {"left": [], "right": []}
            for far, edge in incident.get(junction, []):
                by_side[far].append(edge)
            gates = list(by_side["right"])
            if len(by_side["left"]) == 1:
                gates += by_side["left"]
            if not gates:
                raise AssertionError(f"junction {junction} has no gateable edges")
        gate_edges.append(gates)

    gate_set = {frozenset(e) for gates in gate_edges for e in gates}
    if len(gate_set) != sum(len(gates) for gates in gate_edges):
        raise AssertionError("gate edges of different rows overlap")

    detached = [e for e in all_edges if frozenset(e) not in gate_set]
    for p, q in detached:
        g.add_edge(p, q, 1)
    g.freeze()

    return UnitInstance(
        g, n_alpha, n_beta, unit_threshold(n_alpha, n_beta), gate_edges,
        [rep(base.a(j)) for j in range(1, n_alpha + 1)],
        [rep(base.a_prime(j)) for j in range(1, n_alpha + 1)],
        all_edges,
    )


@dataclass
class OumvRunResult:
    bits: list[int]
    ledger: CostLedger
    distances: list[list[int | None]]


def run_oumv(instance: UnitInstance, pairs, engine="naive", *,
             kernel: str | None = None) -> OumvRunResult:
    """Answer each (u, v) pair through gate insertions and threshold queries."""
    inner = make_engine(engine, instance.graph, UpdateMode.FULL, kernel)
    if inner.mode is not UpdateMode.FULL:
        raise ModeViolationError("unit-weight runs need edge insertions and deletions")
    eng = CountingEngine(inner)
    threshold = instance.threshold

    bits: list[int] = []
    distances: list[list[int | None]] = []
    for u_vec, v_vec in pairs:
        if len(u_vec) != instance.n_beta or len(v_vec) != instance.n_alpha:
            raise ValueError("vector pair dimensions disagree with the instance")
        opened = [k for k in range(1, instance.n_beta + 1) if u_vec[k - 1]]
        for k in opened:
            for p, q in instance.gate_edges[k - 1]:
                eng.insert(p, q, 1)
        hit = 0
        phase_dists: list[int | None] = []
        for j in range(1, instance.n_alpha + 1):
            if not v_vec[j - 1]:
                continue
            d = eng.query(*instance.query_pair(j))
            phase_dists.append(d)
            if d is not UNREACHABLE and d == threshold:
                hit = 1
        for k in opened:
            for p, q in instance.gate_edges[k - 1]:
                eng.delete(p, q)
        bits.append(hit)
        distances.append(phase_dists)
    return OumvRunResult(bits, eng.ledger, distances)


@dataclass
class PlanarityReport:
    node_count: int
    edge_count: int
    edge_bound_ok: bool
    interiors_degree_two: bool
    gates_are_edges: bool

    @property
    def valid(self) -> bool:
        return self.edge_bound_ok and self.interiors_degree_two and self.gates_are_edges


def check_unit_planarity(instance: UnitInstance) -> PlanarityReport:
    """Combinatorial evidence that the fully-connected instance is planar.

    Checks the m <= 3n - 6 bound and the layered structure: every interior
    subdivision node has degree exactly 2 once all gates are present, and
    every gate is a real unit edge of the connected instance. The layered
    construction (two lattice-drawn grids joined by nested connectors)
    cannot produce a crossing, so these checks certify the drawing.
    """
    full = instance.connected_graph()
    n, m_edges = full.node_count, full.edge_count
    bound_ok = n < 3 or m_edges <= 3 * n - 6

    degree: dict[str, int] = {name: 0 for name in full.nodes()}
    for u, v, _ in full.edges():
        degree[u] += 1
        degree[v] += 1
    interiors_ok = all(degree[name] == 2 for name in full.nodes()
                       if full.role(name) == "p")
    gates_ok = all(full.has_edge(p, q)
                   for gates in instance.gate_edges for p, q in gates)
    return PlanarityReport(n, m_edges, bound_ok, interiors_ok, gates_ok)
