"""Dynamic distance engines: the update/query contract the reductions drive.

An engine owns a mutable edge set over a fixed node set and answers exact
distance queries on the current state. Correctness is extensional: every
engine must agree with a fresh Dijkstra run on its current graph, which the
test suite checks on random update/query interleavings.

Instances are single-owner (one operation at a time, no concurrent
access); distinct instances run in parallel freely.

Engines are deliberately naive. The interesting object is the workload the
reduction drivers generate, not the engine; the counting wrapper records
that workload exactly.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from enum import Enum

from dynagrid.graph import UNREACHABLE, Graph
from dynagrid.sssp import CsrGraph


class UpdateMode(Enum):
    FULL = "full"
    WEIGHT_ONLY = "weight-only"


class ModeViolationError(RuntimeError):
    """Insert or delete attempted on a weight-only engine."""


class RollbackError(RuntimeError):
    """Checkpoint/rollback protocol misuse."""


class DecrementError(RuntimeError):
    """Weight decrement attempted on an increase-only journal."""


@dataclass
class CostLedger:
    """Exact operation counts and wall-clock totals for one driver run."""

    weight_updates: int = 0
    insertions: int = 0
    deletions: int = 0
    queries: int = 0
    weight_update_ns: int = 0
    insertion_ns: int = 0
    deletion_ns: int = 0
    query_ns: int = 0

    @property
    def update_ns_total(self) -> int:
        return self.weight_update_ns + self.insertion_ns + self.deletion_ns

    @property
    def updates_total(self) -> int:
        return self.weight_updates + self.insertions + self.deletions

    def counts(self) -> dict[str, int]:
        return {
            "weight_updates": self.weight_updates,
            "insertions": self.insertions,
            "deletions": self.deletions,
            "queries": self.queries,
        }

    def rows(self) -> list[tuple[str, int, int]]:
        """(operation class, count, total nanoseconds) rows for export."""
        return [
            ("weight_update", self.weight_updates, self.weight_update_ns),
            ("insertion", self.insertions, self.insertion_ns),
            ("deletion", self.deletions, self.deletion_ns),
            ("query", self.queries, self.query_ns),
        ]


class DynamicDistanceEngine:
    """Shared state and update handling; subclasses implement query()."""

    def __init__(self, graph: Graph, mode: UpdateMode = UpdateMode.FULL,
                 kernel: str | None = None):
        self.mode = mode
        self.directed = graph.directed
        self._source = graph
        self._edges: dict[tuple[int, int], int] = dict(
            ((u, v), w) for u, v, w in graph.indexed_edges())
        self._kernel = kernel
        self._csr: CsrGraph | None = None

    # -- update side -------------------------------------------------------

    def _key(self, u: str, v: str) -> tuple[int, int]:
        ui = self._source.index_of(u)
        vi = self._source.index_of(v)
        if not self.directed and ui > vi:
            ui, vi = vi, ui
        return (ui, vi)

    @staticmethod
    def _check_weight(w: int) -> None:
        if not isinstance(w, int) or isinstance(w, bool):
            raise TypeError(f"edge weight must be int, got {w!r}")
        if w < 0:
            raise ValueError(f"negative edge weight {w}")

    def has_edge(self, u: str, v: str) -> bool:
        return self._key(u, v) in self._edges

    def edge_weight(self, u: str, v: str) -> int:
        key = self._key(u, v)
        if key not in self._edges:
            raise KeyError(f"no edge ({u!r}, {v!r})")
        return self._edges[key]

    def reweight(self, u: str, v: str, w: int) -> None:
        key = self._key(u, v)
        if key not in self._edges:
            raise KeyError(f"no edge ({u!r}, {v!r})")
        self._check_weight(w)
        self._edges[key] = w
        if self._csr is not None:
            self._csr.set_weight(key[0], key[1], w)
        self._on_update()

    def insert(self, u: str, v: str, w: int) -> None:
        if self.mode is UpdateMode.WEIGHT_ONLY:
            raise ModeViolationError("insert not allowed under weight-only updates")
        key = self._key(u, v)
        if key[0] == key[1]:
            raise ValueError(f"self-loop at {u!r}")
        if key in self._edges:
            raise ValueError(f"edge ({u!r}, {v!r}) already present")
        self._check_weight(w)
        self._edges[key] = w
        self._csr = None
        self._on_update()

    def delete(self, u: str, v: str) -> None:
        if self.mode is UpdateMode.WEIGHT_ONLY:
            raise ModeViolationError("delete not allowed under weight-only updates")
        key = self._key(u, v)
        if key not in self._edges:
            raise KeyError(f"no edge ({u!r}, {v!r})")
        del self._edges[key]
        self._csr = None
        self._on_update()

    def _on_update(self) -> None:
        pass

    # -- query side ----------------------------------------------------------

    def _ensure_csr(self) -> CsrGraph:
        if self._csr is None:
            self._csr = CsrGraph(self._source.node_count,
                                 [(a, b, w) for (a, b), w in self._edges.items()],
                                 directed=self.directed, kernel=self._kernel)
        return self._csr

    def query(self, u: str, v: str):
        raise NotImplementedError

    # -- introspection ---------------------------------------------------------

    def state_digest(self) -> str:
        """Order-independent digest of the current edge multiset."""
        names = self._source.nodes()
        rows = sorted((names[a], names[b], w) for (a, b), w in self._edges.items())
        h = hashlib.sha256()
        h.update(repr(self.directed).encode())
        for row in rows:
            h.update(repr(row).encode())
        return h.hexdigest()

    def current_graph(self) -> Graph:
        """Frozen snapshot of the current state (for oracle replays)."""
        src = self._source
        g = Graph(directed=self.directed)
        for name in src.nodes():
            g.add_node(name, role=src.role(name), ij=src.matrix_ij(name),
                       coord=src.coord(name))
        names = src.nodes()
        for (a, b), w in self._edges.items():
            g.add_edge(names[a], names[b], w)
        return g.freeze()


class NaiveDijkstraEngine(DynamicDistanceEngine):
    """O(1) bookkeeping per update; every query runs Dijkstra from scratch."""

    def __init__(self, graph: Graph, mode: UpdateMode = UpdateMode.FULL,
                 kernel: str | None = None):
        super().__init__(graph, mode, kernel)
        self.sssp_runs = 0

    def query(self, u: str, v: str):
        ui = self._source.index_of(u)
        vi = self._source.index_of(v)
        self.sssp_runs += 1
        d = self._ensure_csr().sssp(ui, vi)[vi]
        return UNREACHABLE if d < 0 else d


class CachedSsspEngine(DynamicDistanceEngine):
    """Caches whole distance maps per source; any update drops the cache."""

    def __init__(self, graph: Graph, mode: UpdateMode = UpdateMode.FULL,
                 kernel: str | None = None):
        super().__init__(graph, mode, kernel)
        self._cache: dict[int, object] = {}
        self.sssp_runs = 0

    def _on_update(self) -> None:
        self._cache.clear()

    def query(self, u: str, v: str):
        ui = self._source.index_of(u)
        vi = self._source.index_of(v)
        if ui in self._cache:
            d = self._cache[ui][vi]
        elif not self.directed and vi in self._cache:
            d = self._cache[vi][ui]
        else:
            self.sssp_runs += 1
            dist = self._ensure_csr().sssp(ui)
            self._cache[ui] = dist
            d = dist[vi]
        return UNREACHABLE if d < 0 else d


ENGINES = {
    "naive": NaiveDijkstraEngine,
    "cached": CachedSsspEngine,
}


def make_engine(spec, graph: Graph, mode: UpdateMode = UpdateMode.FULL,
                kernel: str | None = None):
    """Resolve an engine name, class, or factory callable."""
    if isinstance(spec, str):
        try:
            cls = ENGINES[spec]
        except KeyError:
            raise ValueError(f"unknown engine {spec!r}; choose from {sorted(ENGINES)}")
        return cls(graph, mode, kernel)
    return spec(graph, mode, kernel)


class CountingEngine:
    """Transparent wrapper recording exact counts and wall-clock totals."""

    def __init__(self, inner):
        self.inner = inner
        self.ledger = CostLedger()

    @property
    def mode(self) -> UpdateMode:
        return self.inner.mode

    @property
    def directed(self) -> bool:
        return self.inner.directed

    def reweight(self, u, v, w):
        t0 = time.perf_counter_ns()
        self.inner.reweight(u, v, w)
        self.ledger.weight_update_ns += time.perf_counter_ns() - t0
        self.ledger.weight_updates += 1

    def insert(self, u, v, w):
        t0 = time.perf_counter_ns()
        self.inner.insert(u, v, w)
        self.ledger.insertion_ns += time.perf_counter_ns() - t0
        self.ledger.insertions += 1

    def delete(self, u, v):
        t0 = time.perf_counter_ns()
        self.inner.delete(u, v)
        self.ledger.deletion_ns += time.perf_counter_ns() - t0
        self.ledger.deletions += 1

    def query(self, u, v):
        t0 = time.perf_counter_ns()
        d = self.inner.query(u, v)
        self.ledger.query_ns += time.perf_counter_ns() - t0
        self.ledger.queries += 1
        return d

    # checkpoint/rollback pass through uncounted: they are driver plumbing,
    # not part of the measured workload.
    def checkpoint(self):
        return self.inner.checkpoint()

    def rollback(self):
        return self.inner.rollback()

    def has_edge(self, u, v):
        return self.inner.has_edge(u, v)

    def edge_weight(self, u, v):
        return self.inner.edge_weight(u, v)

    def state_digest(self):
        return self.inner.state_digest()

    def current_graph(self):
        return self.inner.current_graph()


class Journal:
    """Ordered log of inverse mutations since the last checkpoint."""

    def __init__(self):
        self.entries: list[tuple] = []

    def __len__(self) -> int:
        return len(self.entries)

    def record(self, entry: tuple) -> None:
        self.entries.append(entry)

    def revert(self, engine) -> None:
        """Replay inverses in reverse order onto the wrapped engine."""
        while self.entries:
            kind, u, v, w = self.entries.pop()
            if kind == "reweight":
                engine.reweight(u, v, w)
            elif kind == "insert":
                engine.insert(u, v, w)
            else:
                engine.delete(u, v)


class JournalingEngine:
    """Adds checkpoint/rollback to any engine by logging inverse updates.

    With ``increase_only=True`` any weight decrement between checkpoint and
    rollback raises DecrementError, which is how the incremental worst-case
    driver enforces its contract.
    """

    def __init__(self, inner, increase_only: bool = False):
        self.inner = inner
        self.increase_only = increase_only
        self._journal: Journal | None = None
        self._next_token = 0

    @property
    def mode(self) -> UpdateMode:
        return self.inner.mode

    @property
    def directed(self) -> bool:
        return self.inner.directed

    @property
    def journal_size(self) -> int:
        return 0 if self._journal is None else len(self._journal)

    def checkpoint(self) -> int:
        if self._journal is not None:
            raise RollbackError("a checkpoint is already open")
        self._journal = Journal()
        self._next_token += 1
        return self._next_token

    def rollback(self) -> None:
        if self._journal is None:
            raise RollbackError("rollback without an open checkpoint")
        journal, self._journal = self._journal, None
        journal.revert(self.inner)

    def reweight(self, u, v, w):
        old = self.inner.edge_weight(u, v)
        if self.increase_only and self._journal is not None and w < old:
            raise DecrementError(f"decrement {old} -> {w} on ({u!r}, {v!r})")
        self.inner.reweight(u, v, w)
        if self._journal is not None:
            self._journal.record(("reweight", u, v, old))

    def insert(self, u, v, w):
        self.inner.insert(u, v, w)
        if self._journal is not None:
            self._journal.record(("delete", u, v, None))

    def delete(self, u, v):
        old = self.inner.edge_weight(u, v)
        self.inner.delete(u, v)
        if self._journal is not None:
            self._journal.record(("insert", u, v, old))

    def query(self, u, v):
        return self.inner.query(u, v)

    def has_edge(self, u, v):
        return self.inner.has_edge(u, v)

    def edge_weight(self, u, v):
        return self.inner.edge_weight(u, v)

    def state_digest(self):
        return self.inner.state_digest()

    def current_graph(self):
        return self.inner.current_graph()
