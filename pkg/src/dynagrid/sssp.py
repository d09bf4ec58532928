"""Shortest-path kernels: compiled core with a pure-Python twin.

The compiled extension (built from ``_speedups.pyx``) is picked at import
time when present. Set ``DYNAGRID_KERNEL=python`` to force the fallback,
e.g. to benchmark one kernel against the other; both produce identical
distances on identical input.
"""

from __future__ import annotations

import os
from array import array
from heapq import heappop, heappush

try:
    from dynagrid import _speedups
except ImportError:
    _speedups = None

KERNEL_COMPILED = "compiled"
KERNEL_PYTHON = "python"


def available_kernels() -> tuple[str, ...]:
    if _speedups is not None:
        return (KERNEL_COMPILED, KERNEL_PYTHON)
    return (KERNEL_PYTHON,)


def default_kernel() -> str:
    """Kernel chosen at import: env override first, else compiled if built."""
    env = os.environ.get("DYNAGRID_KERNEL", "auto").lower()
    if env in (KERNEL_COMPILED, KERNEL_PYTHON):
        return env
    return KERNEL_COMPILED if _speedups is not None else KERNEL_PYTHON


def _dijkstra_py(indptr, nbr, wt, source, target=-1):
    """Pure-Python twin of the compiled kernel (same contract)."""
    n = len(indptr) - 1
    if source < 0 or source >= n:
        raise IndexError("source index out of range")
    if target >= n:
        raise IndexError("target index out of range")
    dist = [-1] * n
    tent = [-1] * n
    tent[source] = 0
    heap = [(0, source)]
    while heap:
        d, u = heappop(heap)
        if dist[u] != -1:
            continue
        dist[u] = d
        if u == target:
            break
        for e in range(indptr[u], indptr[u + 1]):
            v = nbr[e]
            if dist[v] != -1:
                continue
            nd = d + wt[e]
            if tent[v] == -1 or nd < tent[v]:
                tent[v] = nd
                heappush(heap, (nd, v))
    return dist


class CsrGraph:
    """Frozen adjacency in CSR form with O(1) reweighting of existing edges.

    Node identity is a 0-based index; ``edges`` is a list of (u, v, w)
    triples, one per edge (both directions are materialized internally for
    undirected graphs). Structural changes require building a new instance;
    weight changes go through :meth:`set_weight`.
    """

    def __init__(self, n: int, edges, directed: bool = False, kernel: str | None = None):
        kernel = kernel or default_kernel()
        if kernel == KERNEL_COMPILED and _speedups is None:
            raise RuntimeError("compiled kernel requested but the extension is not built")
        if kernel not in (KERNEL_COMPILED, KERNEL_PYTHON):
            raise ValueError(f"unknown kernel {kernel!r}")
        self.kernel = kernel
        self.n = n
        self.directed = directed

        deg = [0] * n
        for u, v, _ in edges:
            deg[u] += 1
            if not directed:
                deg[v] += 1
        indptr = [0] * (n + 1)
        for i in range(n):
            indptr[i + 1] = indptr[i] + deg[i]
        cursor = list(indptr)
        m2 = indptr[n]
        nbr = [0] * m2
        wts = [0] * m2
        self._slots: dict[tuple[int, int], tuple[int, int]] = {}
        for u, v, w in edges:
            fwd = cursor[u]
            cursor[u] += 1
            nbr[fwd] = v
            wts[fwd] = w
            rev = -1
            if not directed:
                rev = cursor[v]
                cursor[v] += 1
                nbr[rev] = u
                wts[rev] = w
            self._slots[(u, v)] = (fwd, rev)

        if kernel == KERNEL_COMPILED:
            self._indptr = array("q", indptr)
            self._nbr = array("q", nbr)
            self._wt = array("q", wts)
        else:
            self._indptr = indptr
            self._nbr = nbr
            self._wt = wts

    def set_weight(self, u: int, v: int, w: int) -> None:
        fwd, rev = self._slots[(u, v)]
        self._wt[fwd] = w
        if rev >= 0:
            self._wt[rev] = w

    def sssp(self, source: int, target: int = -1):
        """Distances from source as an int64 sequence, -1 for unsettled."""
        if self.kernel == KERNEL_COMPILED:
            return _speedups.dijkstra_csr(self._indptr, self._nbr, self._wt, source, target)
        return _dijkstra_py(self._indptr, self._nbr, self._wt, source, target)

    def distance(self, source: int, target: int):
        d = self.sssp(source, target)[target]
        return None if d < 0 else d
