import pytest

from dynagrid.sssp import (
    KERNEL_COMPILED,
    KERNEL_PYTHON,
    CsrGraph,
    available_kernels,
    default_kernel,
)

from conftest import random_graph

needs_compiled = pytest.mark.skipif(
    KERNEL_COMPILED not in available_kernels(),
    reason="compiled extension not built")


def _csr_pair(g):
    edges = g.indexed_edges()
    py = CsrGraph(g.node_count, edges, directed=g.directed, kernel=KERNEL_PYTHON)
    cy = CsrGraph(g.node_count, edges, directed=g.directed, kernel=KERNEL_COMPILED)
    return py, cy


@needs_compiled
@pytest.mark.parametrize("directed", [False, True])
def test_kernels_agree_on_random_graphs(rng, directed):
    for _ in range(30):
        g = random_graph(rng, max_nodes=40, directed=directed)
        py, cy = _csr_pair(g)
        for src in range(0, g.node_count, max(1, g.node_count // 4)):
            assert list(cy.sssp(src)) == list(py.sssp(src))


@needs_compiled
def test_early_target_matches_full_run(rng):
    for _ in range(20):
        g = random_graph(rng, max_nodes=30)
        py, cy = _csr_pair(g)
        full = py.sssp(0)
        for t in range(g.node_count):
            assert cy.distance(0, t) == (None if full[t] < 0 else full[t])
            assert py.distance(0, t) == (None if full[t] < 0 else full[t])


@needs_compiled
def test_reweight_applies_to_both_kernels(rng):
    g = random_graph(rng, max_nodes=20, edge_prob=0.6)
    if g.edge_count == 0:
        pytest.skip("empty random draw")
    py, cy = _csr_pair(g)
    u, v, _ = g.indexed_edges()[0]
    for csr in (py, cy):
        csr.set_weight(u, v, 1234)
    assert list(cy.sssp(0)) == list(py.sssp(0))


def test_default_kernel_is_available():
    assert default_kernel() in available_kernels()


def test_requesting_missing_kernel_name_fails():
    with pytest.raises(ValueError):
        CsrGraph(1, [], kernel="fortran")


def test_source_bounds_checked():
    csr = CsrGraph(2, [(0, 1, 1)])
    with pytest.raises(IndexError):
        csr.sssp(5)
