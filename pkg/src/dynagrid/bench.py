"""Workload benchmark over engines and kernels.

One cell = one product-reduction run at a given square size; the row
records the exact operation counts plus wall-clock totals per operation
class, so the compiled and pure-Python kernels can be compared on the
same workload.
"""

from __future__ import annotations

import random

from dynagrid.apsp import run_apsp_reduction
from dynagrid.engines import UpdateMode
from dynagrid.matrices import random_matrix
from dynagrid.sssp import available_kernels, default_kernel


def bench_cell(n: int, bound: int, engine: str, kernel: str, seed: int,
               n_alpha: int | None = None, n_beta: int | None = None) -> dict:
    """Run one (engine, kernel, size) cell and report its ledger."""
    n_alpha = n_alpha or n
    n_beta = n_beta or n
    rng = random.Random(seed)
    a = random_matrix(n, n_beta, bound, rng)
    b = random_matrix(n_beta, n_alpha, bound, rng)
    result = run_apsp_reduction(a, b, bound, engine, UpdateMode.WEIGHT_ONLY,
                                kernel=kernel)
    ledger = result.ledger
    return {
        "engine": engine,
        "kernel": kernel,
        "n": n,
        "n_alpha": n_alpha,
        "n_beta": n_beta,
        "x": bound,
        "updates": ledger.updates_total,
        "queries": ledger.queries,
        "update_ns_total": ledger.update_ns_total,
        "query_ns_total": ledger.query_ns,
    }


def run_bench(sizes: list[int], bound: int, engines: list[str],
              kernels: list[str] | str, seed: int) -> list[dict]:
    if kernels == "both" or kernels == ["both"]:
        kernels = list(available_kernels())
    elif isinstance(kernels, str):
        kernels = [default_kernel() if kernels == "auto" else kernels]
    rows = []
    for n in sizes:
        for engine in engines:
            for kernel in kernels:
                rows.append(bench_cell(n, bound, engine, kernel, seed))
    return rows
