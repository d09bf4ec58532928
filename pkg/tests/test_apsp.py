import random

import pytest

from dynagrid.apsp import (
    PhaseSchedule,
    ReductionIntegrityError,
    recover_entry,
    run_apsp_reduction,
    run_incremental_worstcase,
)
from dynagrid.engines import DecrementError, NaiveDijkstraEngine, UpdateMode
from dynagrid.graph import dijkstra
from dynagrid.gridembed import (
    embed_weighted,
    recovery_offset,
    weighted_terminal_distance,
)
from dynagrid.matrices import random_matrix
from dynagrid.oracles import min_plus_product


def test_hand_traced_unit_instance():
    result = run_apsp_reduction([[1]], [[2]], 2, collect_traces=True)
    assert result.traces == [[31]]  # 14 + 1 + 16
    assert result.schedule.offset == 28
    assert result.product == [[3]]


def test_recover_entry_window():
    assert recover_entry(31, 1, 1, 2) == 3
    offset = recovery_offset(1, 1, 2)
    assert recover_entry(offset, 1, 1, 2) == 0
    assert recover_entry(offset + 4, 1, 1, 2) == 4  # 2X: max product entry
    with pytest.raises(ReductionIntegrityError):
        recover_entry(offset - 1, 1, 1, 2)
    with pytest.raises(ReductionIntegrityError):
        recover_entry(None, 1, 1, 2)


def test_oracle_equivalence_random_instances(rng):
    for _ in range(15):
        n = rng.randint(1, 6)
        n_beta = rng.randint(1, 6)
        n_alpha = rng.randint(1, 6)
        bound = rng.randint(1, 30)
        a = random_matrix(n, n_beta, bound, rng)
        b = random_matrix(n_beta, n_alpha, bound, rng)
        expected = min_plus_product(a, b)
        for mode in (UpdateMode.FULL, UpdateMode.WEIGHT_ONLY):
            for engine in ("naive", "cached"):
                result = run_apsp_reduction(a, b, bound, engine, mode)
                assert result.product == expected


def test_ledger_counts_exact(rng):
    n, n_beta, n_alpha, bound = 3, 4, 2, 7
    a = random_matrix(n, n_beta, bound, rng)
    b = random_matrix(n_beta, n_alpha, bound, rng)
    ledger = run_apsp_reduction(a, b, bound).ledger
    assert ledger.weight_updates == n * n_beta
    assert ledger.queries == n * n_alpha
    assert ledger.insertions == 0
    assert ledger.deletions == 0


def test_every_distance_in_offset_window(rng):
    n = 4
    bound = 9
    a = random_matrix(n, n, bound, rng)
    b = random_matrix(n, n, bound, rng)
    result = run_apsp_reduction(a, b, bound, collect_traces=True)
    offset = result.schedule.offset
    for phase in result.traces:
        for d in phase:
            assert offset <= d <= offset + 2 * bound


def test_pair_spread_is_bounded(rng):
    bound = 6
    a = random_matrix(5, 3, bound, rng)
    b = random_matrix(3, 4, bound, rng)
    result = run_apsp_reduction(a, b, bound, collect_traces=True)
    offset = result.schedule.offset
    for lo, hi in result.pair_spread().values():
        # max/min <= (offset + 2X)/offset, cross-multiplied to stay integral
        assert hi * offset <= (offset + 2 * bound) * lo


def test_base_shift_compensated(rng):
    a = random_matrix(3, 2, 5, rng)
    b = random_matrix(2, 3, 5, rng)
    plain = run_apsp_reduction(a, b, 5)
    shifted = run_apsp_reduction(a, b, 5, base_shift=1, collect_traces=True)
    assert shifted.product == plain.product == min_plus_product(a, b)
    # with the shift no crossing edge is ever weightless
    rg = shifted.instance
    for k in range(1, rg.rows + 1):
        assert shifted.schedule.crossing_weight([0] * rg.rows, k) >= 1


def test_phase_schedule_counts():
    sched = PhaseSchedule(n=5, n_alpha=3, n_beta=2, bound=4)
    assert len(sched.phase_weights([1, 2])) == 2
    assert list(sched.query_columns()) == [1, 2, 3]


def test_shape_validation():
    with pytest.raises(ValueError):
        run_apsp_reduction([[1, 2]], [[1, 2]], 2)  # inner mismatch
    with pytest.raises(ValueError):
        run_apsp_reduction([[9]], [[1]], 2)  # entry above bound


# -- incremental worst-case driver ----------------------------------------------


def test_incremental_matches_plain_run(rng):
    for _ in range(8):
        n = rng.randint(1, 5)
        bound = rng.randint(1, 12)
        a = random_matrix(n, n, bound, rng)
        b = random_matrix(n, n, bound, rng)
        plain = run_apsp_reduction(a, b, bound)
        inc = run_incremental_worstcase(a, b, bound)
        assert inc.product == plain.product
        assert inc.initial_digest == inc.final_digest


def test_incremental_updates_are_strict_increases(rng):
    recorded = []

    class Spy(NaiveDijkstraEngine):
        def reweight(self, u, v, w):
            recorded.append((self.edge_weight(u, v), w))
            super().reweight(u, v, w)

    a = random_matrix(4, 3, 6, rng)
    b = random_matrix(3, 4, 6, rng)
    run_incremental_worstcase(a, b, 6, Spy)
    phase_updates = [(old, new) for old, new in recorded if new > old]
    rollbacks = [(old, new) for old, new in recorded if new < old]
    # every driver-issued update strictly increases; only rollback replay decreases
    assert all(new > old for old, new in phase_updates)
    assert len(phase_updates) + len(rollbacks) == len([r for r in recorded if r[0] != r[1]])
    assert not any(old == new for old, new in recorded)


def test_incremental_decrement_guard_fires_on_tampered_state(rng):
    a = [[2]]
    b = [[1]]

    class Tampered(NaiveDijkstraEngine):
        """Starts one crossing edge above its base weight."""

        def __init__(self, graph, mode=UpdateMode.FULL, kernel=None):
            super().__init__(graph, mode, kernel)
            self.reweight("b1", "b'1", 10**6)

    with pytest.raises(DecrementError):
        run_incremental_worstcase(a, b, 2, Tampered)


def test_broken_engine_detected():
    class Liar(NaiveDijkstraEngine):
        def query(self, u, v):
            return 0

    with pytest.raises(ReductionIntegrityError):
        run_apsp_reduction([[1]], [[1]], 2, Liar)


# -- the naive single-sink layout the double grid replaces ----------------------


def test_single_sink_construction_always_picks_first_row():
    """Connecting all b terminals straight to one sink biases the route.

    With sink edges weighted by the row entries alone, the queried distance
    always uses k = 1, because the grid term grows with k faster than any
    entry can compensate. The double grid exists to cancel that bias.
    """
    bound = 5
    n = 3
    rng = random.Random(42)
    b = random_matrix(n, n, bound, rng)
    a_row = [5, 0, 0]  # the true minimum prefers k = 2 or 3
    emb = embed_weighted(b, bound)
    g = emb.graph
    sink_dist = {}
    for j in range(1, n + 1):
        dm = dijkstra(g, emb.a(j))
        sink_dist[j] = min(
            dm.distance(emb.b(k)) + a_row[k - 1] for k in range(1, n + 1))
    wrong_somewhere = False
    for j in range(1, n + 1):
        through_first = weighted_terminal_distance(n, n, j, 1, b[0][j - 1], bound) \
            + a_row[0]
        assert sink_dist[j] == through_first
        true_min = min(a_row[k] + b[k][j - 1] for k in range(n))
        if a_row[0] + b[0][j - 1] != true_min:
            wrong_somewhere = True
    assert wrong_somewhere
