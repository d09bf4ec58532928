# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled Dijkstra kernel over CSR adjacency with int64 weights."""

from cpython cimport array
import array

from libc.stdlib cimport free, malloc

cdef array.array _I64 = array.array('q', [])


def dijkstra_csr(const long long[::1] indptr, const long long[::1] nbr,
                 const long long[::1] wt, Py_ssize_t source, Py_ssize_t target=-1):
    """Single-source distances; -1 marks nodes not settled.

    With target >= 0 the search stops as soon as the target is settled, so
    only the target's entry is guaranteed final in that case.
    """
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t m = nbr.shape[0]
    if source < 0 or source >= n:
        raise IndexError("source index out of range")
    if target >= n:
        raise IndexError("target index out of range")

    cdef array.array out = array.clone(_I64, n, zero=False)
    cdef long long[::1] dist = out
    cdef Py_ssize_t i
    for i in range(n):
        dist[i] = -1

    # Lazy-deletion binary heap; a node is pushed only when its tentative
    # distance improves, so the heap never exceeds m + 1 entries.
    cdef long long *tent = <long long *> malloc(n * sizeof(long long))
    cdef long long *hd = <long long *> malloc((m + 2) * sizeof(long long))
    cdef Py_ssize_t *hv = <Py_ssize_t *> malloc((m + 2) * sizeof(Py_ssize_t))
    if tent == NULL or hd == NULL or hv == NULL:
        free(tent)
        free(hd)
        free(hv)
        raise MemoryError()

    cdef Py_ssize_t size = 1, pos, child, u, v, e
    cdef long long d, nd, kd
    cdef Py_ssize_t kv

    try:
        for i in range(n):
            tent[i] = -1
        tent[source] = 0
        hd[0] = 0
        hv[0] = source

        while size > 0:
            # pop-min
            d = hd[0]
            u = hv[0]
            size -= 1
            kd = hd[size]
            kv = hv[size]
            pos = 0
            child = 1
            while child < size:
                if child + 1 < size and hd[child + 1] < hd[child]:
                    child += 1
                if hd[child] >= kd:
                    break
                hd[pos] = hd[child]
                hv[pos] = hv[child]
                pos = child
                child = 2 * pos + 1
            if size > 0:
                hd[pos] = kd
                hv[pos] = kv

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
                    # sift-up insert
                    pos = size
                    size += 1
                    while pos > 0:
                        child = (pos - 1) >> 1
                        if hd[child] <= nd:
                            break
                        hd[pos] = hd[child]
                        hv[pos] = hv[child]
                        pos = child
                    hd[pos] = nd
                    hv[pos] = v
    finally:
        free(tent)
        free(hd)
        free(hv)

    return out
