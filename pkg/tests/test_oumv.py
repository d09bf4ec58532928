import pytest

from dynagrid.engines import CachedSsspEngine, ModeViolationError, UpdateMode
from dynagrid.graph import dijkstra
from dynagrid.gridembed import connector_length, unit_threshold
from dynagrid.matrices import ones, random_boolean_matrix, random_boolean_vector
from dynagrid.oracles import oumv_answer
from dynagrid.oumv import (
    NodeBudgetError,
    build_unit_instance,
    check_unit_planarity,
    run_oumv,
)

networkx = pytest.importorskip("networkx")


def test_every_edge_has_weight_one():
    inst = build_unit_instance([[1, 0], [1, 1]])
    for graph in (inst.graph, inst.connected_graph()):
        assert all(w == 1 for _, _, w in graph.edges())


def test_hand_traced_single_cell():
    inst = build_unit_instance([[1]])
    assert inst.threshold == 7
    full = inst.connected_graph()
    a, ap = inst.query_pair(1)
    assert dijkstra(full, a).distance(ap) == 7
    # detached state cannot reach the mirrored side at all
    assert dijkstra(inst.graph, a).distance(ap) is None


def test_connector_lengths_match_formula():
    n_beta, n_alpha = 3, 2
    inst = build_unit_instance(ones(n_beta, n_alpha))
    full = inst.connected_graph()
    for k in range(1, n_beta + 1):
        length = connector_length(n_alpha, n_beta, k)
        if length == 0:
            continue
        # the connector contributes exactly `length` unit edges between
        # its two endpoints: interior nodes c{k}~1 .. c{k}~{length-1}
        interior = [n for n in full.nodes() if n.startswith(f"c{k}~")]
        assert len(interior) == length - 1


def test_threshold_dichotomy_exhaustive_small(rng):
    for n_beta in range(1, 5):
        for n_alpha in range(1, 5):
            mats = [ones(n_beta, n_alpha),
                    random_boolean_matrix(n_beta, n_alpha, rng),
                    random_boolean_matrix(n_beta, n_alpha, rng)]
            for m in mats:
                inst = build_unit_instance(m)
                full = inst.connected_graph()
                t = unit_threshold(n_alpha, n_beta)
                assert inst.threshold == t
                for j in range(1, n_alpha + 1):
                    a, ap = inst.query_pair(j)
                    d = dijkstra(full, a).distance(ap)
                    hit = any(m[k][j - 1] for k in range(n_beta))
                    assert d == (t if hit else t + 1)


def test_run_matches_oracle_bit_for_bit(rng):
    for _ in range(12):
        n_beta = rng.randint(1, 5)
        n_alpha = rng.randint(1, 5)
        m = random_boolean_matrix(n_beta, n_alpha, rng)
        inst = build_unit_instance(m)
        pairs = [(random_boolean_vector(n_beta, rng),
                  random_boolean_vector(n_alpha, rng)) for _ in range(8)]
        result = run_oumv(inst, pairs)
        assert result.bits == [oumv_answer(m, u, v) for u, v in pairs]


def test_all_zero_u_vector_never_answers_one(rng):
    m = ones(3, 3)
    inst = build_unit_instance(m)
    pairs = [([0, 0, 0], [1, 1, 1]), ([0, 0, 0], [0, 1, 0])]
    result = run_oumv(inst, pairs)
    assert result.bits == [0, 0]
    t = inst.threshold
    for phase in result.distances:
        for d in phase:
            assert d is None or d > t


def test_queried_distances_never_between_thresholds(rng):
    m = random_boolean_matrix(4, 4, rng)
    inst = build_unit_instance(m)
    pairs = [(random_boolean_vector(4, rng), [1, 1, 1, 1]) for _ in range(10)]
    result = run_oumv(inst, pairs)
    for phase in result.distances:
        for d in phase:
            assert d is None or d == inst.threshold or d > inst.threshold


def test_phase_ledger_bounds(rng):
    m = random_boolean_matrix(3, 4, rng)
    inst = build_unit_instance(m)
    u = [1, 0, 1]
    v = [0, 1, 1, 0]
    result = run_oumv(inst, [(u, v)])
    assert result.ledger.queries == sum(v)
    assert result.ledger.insertions <= 2 * sum(u)
    assert result.ledger.deletions == result.ledger.insertions
    assert result.ledger.weight_updates == 0


def test_cached_engine_gives_same_bits(rng):
    m = random_boolean_matrix(3, 3, rng)
    inst = build_unit_instance(m)
    pairs = [(random_boolean_vector(3, rng), random_boolean_vector(3, rng))
             for _ in range(6)]
    assert run_oumv(inst, pairs).bits == run_oumv(inst, pairs, "cached").bits


def test_weight_only_engines_rejected():
    inst = build_unit_instance([[1]])

    def weight_only_factory(graph, mode, kernel):
        return CachedSsspEngine(graph, UpdateMode.WEIGHT_ONLY, kernel)

    with pytest.raises(ModeViolationError):
        run_oumv(inst, [([1], [1])], weight_only_factory)


def test_vector_dimension_validation():
    inst = build_unit_instance([[1, 0]])
    with pytest.raises(ValueError):
        run_oumv(inst, [([1, 1], [1, 0])])


def test_node_budget_guard():
    with pytest.raises(NodeBudgetError):
        build_unit_instance(ones(4, 4), max_nodes=10)


def test_planarity_internal_check_and_networkx_agreement(rng):
    for n_beta, n_alpha in [(1, 1), (1, 4), (3, 2), (4, 4)]:
        m = random_boolean_matrix(n_beta, n_alpha, rng)
        inst = build_unit_instance(m)
        report = check_unit_planarity(inst)
        assert report.valid
        nx_graph = networkx.Graph()
        full = inst.connected_graph()
        nx_graph.add_nodes_from(full.nodes())
        nx_graph.add_edges_from((u, v) for u, v, _ in full.edges())
        is_planar, _ = networkx.check_planarity(nx_graph)
        assert is_planar
