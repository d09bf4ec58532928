"""Single-value reductions: s,t-distance, directed girth, and diameter.

Each variant wraps the double-grid product instance so that one scalar
answer per query step carries the terminal distance: an s,t query is the
distance plus 2y, a girth query is the distance plus 1, and a diameter
query is again the distance plus 2y once y is large enough that the s,t
pair is the unique farthest pair. The weight-only mode never inserts or
deletes: the s/t attachment edges are pre-placed at rho*y and a query
temporarily lowers the two active ones back to y.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from dynagrid.engines import CostLedger, CountingEngine, UpdateMode, make_engine
from dynagrid.graph import Graph
from dynagrid.gridembed import ReductionGraph, assemble_double_grid
from dynagrid.apsp import PhaseSchedule, _validated_schedule, recover_entry


class Variant(Enum):
    ST = "st"
    GIRTH = "girth"
    DIAMETER = "diameter"


@dataclass
class VariantInstance:
    variant: Variant
    base: ReductionGraph
    graph: Graph
    y: int
    rho: int
    weight_only: bool
    s: str = "s"
    t: str = "t"

    def st_edges(self, j: int) -> list[tuple[str, str]]:
        return [(self.s, self.base.a(j)),
                (self.t, self.base.a_prime(self.base.cols - j + 1))]

    def back_edge(self, j: int) -> tuple[str, str]:
        a_j, a_pj = self.base.query_pair(j)
        return (a_pj, a_j)


def default_heavy_weight(variant: Variant, base: ReductionGraph) -> int:
    """A y that provably dominates: see the module docstring.

    For ST (and the girth back edge, which weighs 1) any y above the
    largest possible queried distance works. For DIAMETER, y exceeds the
    total edge weight of the base instance, which bounds every pairwise
    distance, so d(s,t) = 2y + d beats every other pair strictly.
    """
    from dynagrid.gridembed import recovery_offset

    if variant is Variant.DIAMETER:
        return 1 + base.graph.total_edge_weight()
    return 1 + recovery_offset(base.cols, base.rows, base.bound) + \
        base.crossing_shift + 2 * base.bound


def _oriented_copy(base: ReductionGraph) -> Graph:
    """Directed copy for the girth variant: horizontal edges point right,
    left-grid verticals point down, mirrored-grid verticals point up."""
    src = base.graph
    g = Graph(directed=True)
    for name in src.nodes():
        g.add_node(name, role=src.role(name), ij=src.matrix_ij(name),
                   coord=src.coord(name))
    for u, v, w in src.edges():
        cu, cv = src.coord(u), src.coord(v)
        if cu.row == cv.row:
            head, tail = (u, v) if cu.col < cv.col else (v, u)
        else:
            down = (u, v) if cu.row < cv.row else (v, u)
            if "'" in u:
                head, tail = down[1], down[0]
            else:
                head, tail = down
        g.add_edge(head, tail, w)
    return g.freeze()


def build_variant_instance(b_mat, bound: int, variant: Variant, *,
                           crossing_shift: int = 0, y: int | None = None,
                           rho: int = 2, weight_only: bool = False) -> VariantInstance:
    base = assemble_double_grid(b_mat, bound, crossing_shift)
    if variant is Variant.GIRTH:
        if weight_only:
            raise ValueError("the girth variant runs in full update mode only")
        return VariantInstance(variant, base, _oriented_copy(base), y or 1, rho, False)

    if y is None:
        y = default_heavy_weight(variant, base)
    if rho < 2:
        raise ValueError("rho must be at least 2")
    src = base.graph
    g = Graph()
    for name in src.nodes():
        g.add_node(name, role=src.role(name), ij=src.matrix_ij(name),
                   coord=src.coord(name))
    g.add_node("s", role="s")
    g.add_node("t", role="t")
    for u, v, w in src.edges():
        g.add_edge(u, v, w)
    if weight_only:
        for j in range(1, base.cols + 1):
            g.add_edge("s", base.a(j), rho * y)
            g.add_edge("t", base.a_prime(j), rho * y)
    g.freeze()
    return VariantInstance(variant, base, g, y, rho, weight_only)


@dataclass
class VariantRunResult:
    product: list[list[int]]
    ledger: CostLedger
    schedule: PhaseSchedule
    instance: VariantInstance
    answers: list[list[int]]
    distances: list[list[int]]


def run_variant_reduction(a, b, bound: int, variant: Variant, engine="naive",
                          mode: UpdateMode = UpdateMode.FULL, *,
                          y: int | None = None, rho: int = 2,
                          crossing_shift: int = 0, kernel: str | None = None) -> VariantRunResult:
    """Recover the tropical product from single-value variant answers."""
    schedule = _validated_schedule(a, b, bound, crossing_shift)
    weight_only = mode is UpdateMode.WEIGHT_ONLY
    inst = build_variant_instance(b, bound, variant, crossing_shift=crossing_shift,
                                  y=y, rho=rho, weight_only=weight_only)
    eng = CountingEngine(make_engine(engine, inst.graph, mode, kernel))

    product: list[list[int]] = []
    answers: list[list[int]] = []
    distances: list[list[int]] = []
    for i in range(1, schedule.n + 1):
        row = a[i - 1]
        for k in range(1, schedule.n_beta + 1):
            eng.reweight(*inst.base.crossing_edge(k), schedule.crossing_weight(row, k))
        ans_row, d_row, out_row = [], [], []
        for j in range(1, schedule.n_alpha + 1):
            if variant is Variant.GIRTH:
                back = inst.back_edge(j)
                eng.insert(*back, 1)
                answer = 1 + eng.query(*inst.base.query_pair(j))
                eng.delete(*back)
                d = answer - 1
            else:
                pairs = inst.st_edges(j)
                if weight_only:
                    for e in pairs:
                        eng.reweight(*e, inst.y)
                else:
                    for e in pairs:
                        eng.insert(*e, inst.y)
                answer = eng.query(inst.s, inst.t)
                if weight_only:
                    for e in pairs:
                        eng.reweight(*e, inst.rho * inst.y)
                else:
                    for e in pairs:
                        eng.delete(*e)
                d = answer - 2 * inst.y
            ans_row.append(answer)
            d_row.append(d)
            out_row.append(recover_entry(d, schedule.n_alpha, schedule.n_beta,
                                         bound, crossing_shift))
        product.append(out_row)
        answers.append(ans_row)
        distances.append(d_row)
    return VariantRunResult(product, eng.ledger, schedule, inst, answers, distances)
