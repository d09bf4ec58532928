"""Tropical matrix product computed through a dynamic distance engine.

One phase per row of the left matrix: reweight the crossing edges with
that row's entries, then query one terminal pair per output column. Every
queried distance is the fixed instance offset plus the product entry, so
recovery is a single subtraction. A rollback-based driver turns the same
phase loop into an increase-only workload.
"""

from __future__ import annotations

from dataclasses import dataclass

from dynagrid.engines import (
    CostLedger,
    CountingEngine,
    JournalingEngine,
    UpdateMode,
    make_engine,
)
from dynagrid.graph import UNREACHABLE
from dynagrid.gridembed import (
    ReductionGraph,
    assemble_double_grid,
    crossing_base_weight,
    recovery_offset,
)
from dynagrid.matrices import dims, validate_matrix


class ReductionIntegrityError(RuntimeError):
    """A queried distance fell outside the provable window: engine is broken."""


@dataclass(frozen=True)
class PhaseSchedule:
    """Shape constants plus the per-phase crossing weights and query columns."""

    n: int
    n_alpha: int
    n_beta: int
    bound: int
    base_shift: int = 0

    @property
    def offset(self) -> int:
        return recovery_offset(self.n_alpha, self.n_beta, self.bound) + self.base_shift

    def crossing_weight(self, row: list[int], k: int) -> int:
        base = crossing_base_weight(self.n_alpha, self.n_beta, k, self.bound)
        return base + self.base_shift + row[k - 1]

    def phase_weights(self, row: list[int]) -> list[int]:
        return [self.crossing_weight(row, k) for k in range(1, self.n_beta + 1)]

    def query_columns(self) -> range:
        return range(1, self.n_alpha + 1)


def _validated_schedule(a, b, bound, base_shift) -> PhaseSchedule:
    n, n_beta = dims(a)
    n_beta_b, n_alpha = dims(b)
    if n_beta != n_beta_b:
        raise ValueError(f"inner dimensions disagree: {n_beta} vs {n_beta_b}")
    validate_matrix(a, bound, "left matrix")
    validate_matrix(b, bound, "right matrix")
    return PhaseSchedule(n, n_alpha, n_beta, bound, base_shift)


def recover_entry(d, n_alpha: int, n_beta: int, bound: int, base_shift: int = 0) -> int:
    """Product entry hidden in a queried distance; rejects impossible values."""
    offset = recovery_offset(n_alpha, n_beta, bound) + base_shift
    if d is UNREACHABLE or d < offset:
        raise ReductionIntegrityError(
            f"queried distance {d!r} below the instance offset {offset}")
    return d - offset


@dataclass
class ApspRunResult:
    product: list[list[int]]
    ledger: CostLedger
    schedule: PhaseSchedule
    instance: ReductionGraph
    traces: list[list[int]] | None = None
    initial_digest: str | None = None
    final_digest: str | None = None

    def pair_spread(self) -> dict[int, tuple[int, int]]:
        """Per query column: (min, max) distance observed across phases."""
        if self.traces is None:
            raise ValueError("run was executed without trace collection")
        spread: dict[int, tuple[int, int]] = {}
        for phase in self.traces:
            for j, d in enumerate(phase, start=1):
                lo, hi = spread.get(j, (d, d))
                spread[j] = (min(lo, d), max(hi, d))
        return spread


def run_apsp_reduction(a, b, bound: int, engine="naive",
                       mode: UpdateMode = UpdateMode.WEIGHT_ONLY, *,
                       base_shift: int = 0, kernel: str | None = None,
                       collect_traces: bool = False) -> ApspRunResult:
    """Compute the tropical product of a and b through distance queries.

    The engine sees exactly n_beta reweights and n_alpha queries per phase
    and nothing else; in particular the run needs no insertions or
    deletions, so it works under weight-only engines.
    """
    schedule = _validated_schedule(a, b, bound, base_shift)
    rg = assemble_double_grid(b, bound, base_shift)
    eng = CountingEngine(make_engine(engine, rg.graph, mode, kernel))

    product = []
    traces: list[list[int]] | None = [] if collect_traces else None
    for i in range(1, schedule.n + 1):
        row = a[i - 1]
        for k in range(1, schedule.n_beta + 1):
            eng.reweight(*rg.crossing_edge(k), schedule.crossing_weight(row, k))
        out_row = []
        phase_trace = []
        for j in schedule.query_columns():
            d = eng.query(*rg.query_pair(j))
            out_row.append(recover_entry(d, schedule.n_alpha, schedule.n_beta,
                                         bound, base_shift))
            if traces is not None:
                phase_trace.append(d)
        product.append(out_row)
        if traces is not None:
            traces.append(phase_trace)
    return ApspRunResult(product, eng.ledger, schedule, rg, traces)


def run_incremental_worstcase(a, b, bound: int, engine="naive", *,
                              base_shift: int = 0, kernel: str | None = None,
                              collect_traces: bool = False) -> ApspRunResult:
    """Same product, but each phase only increases weights and is rolled back.

    Per phase: open a checkpoint, raise each crossing edge by its row entry
    (zero deltas are skipped so every journaled update is a strict
    increase), query, then roll back. The engine state after the run is
    bit-identical to the initial state.
    """
    schedule = _validated_schedule(a, b, bound, base_shift)
    rg = assemble_double_grid(b, bound, base_shift)
    journaled = JournalingEngine(
        make_engine(engine, rg.graph, UpdateMode.WEIGHT_ONLY, kernel),
        increase_only=True)
    eng = CountingEngine(journaled)
    initial = journaled.state_digest()

    product = []
    traces: list[list[int]] | None = [] if collect_traces else None
    for i in range(1, schedule.n + 1):
        row = a[i - 1]
        eng.checkpoint()
        for k in range(1, schedule.n_beta + 1):
            if row[k - 1]:
                eng.reweight(*rg.crossing_edge(k), schedule.crossing_weight(row, k))
        out_row = []
        phase_trace = []
        for j in schedule.query_columns():
            d = eng.query(*rg.query_pair(j))
            out_row.append(recover_entry(d, schedule.n_alpha, schedule.n_beta,
                                         bound, base_shift))
            if traces is not None:
                phase_trace.append(d)
        eng.rollback()
        product.append(out_row)
        if traces is not None:
            traces.append(phase_trace)
    return ApspRunResult(product, eng.ledger, schedule, rg, traces,
                         initial_digest=initial,
                         final_digest=journaled.state_digest())
