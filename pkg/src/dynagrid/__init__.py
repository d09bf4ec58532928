"""Planar grid-graph gadgets and dynamic shortest-path reduction drivers.

The package builds lattice-shaped weighted graphs that encode matrices in
their terminal-to-terminal distances, then computes tropical matrix
products, online vector-pair products, and matching/girth/diameter values
purely through update/query sequences against pluggable dynamic distance
engines. Everything is checked against independent brute-force oracles.
"""

from dynagrid.apsp import (
    PhaseSchedule,
    recover_entry,
    run_apsp_reduction,
    run_incremental_worstcase,
)
from dynagrid.engines import (
    CachedSsspEngine,
    CostLedger,
    CountingEngine,
    JournalingEngine,
    NaiveDijkstraEngine,
    UpdateMode,
    make_engine,
)
from dynagrid.graph import (
    UNREACHABLE,
    DistanceMap,
    Graph,
    GridCoord,
    dijkstra,
    validate_grid_subgraph,
)
from dynagrid.gridembed import (
    GridEmbedding,
    ReductionGraph,
    assemble_double_grid,
    closed_form_distance,
    embed_boolean,
    embed_weighted,
    recovery_offset,
    unit_threshold,
)
from dynagrid.matching import (
    MatchingObjective,
    SplitInstance,
    build_split_instance,
    run_matching_reduction,
    verify_unique_pm,
)
from dynagrid.oracles import (
    INFEASIBLE,
    min_plus_product,
    min_weight_perfect_matching,
    oumv_answer,
)
from dynagrid.oumv import UnitInstance, build_unit_instance, check_unit_planarity, run_oumv
from dynagrid.sssp import available_kernels, default_kernel
from dynagrid.variants import Variant, build_variant_instance, run_variant_reduction

__version__ = "0.1.0"

__all__ = [
    "CachedSsspEngine",
    "CostLedger",
    "CountingEngine",
    "DistanceMap",
    "Graph",
    "GridCoord",
    "GridEmbedding",
    "INFEASIBLE",
    "JournalingEngine",
    "MatchingObjective",
    "NaiveDijkstraEngine",
    "PhaseSchedule",
    "ReductionGraph",
    "SplitInstance",
    "UNREACHABLE",
    "UnitInstance",
    "UpdateMode",
    "Variant",
    "assemble_double_grid",
    "available_kernels",
    "build_split_instance",
    "build_unit_instance",
    "build_variant_instance",
    "check_unit_planarity",
    "closed_form_distance",
    "default_kernel",
    "dijkstra",
    "embed_boolean",
    "embed_weighted",
    "make_engine",
    "min_plus_product",
    "min_weight_perfect_matching",
    "oumv_answer",
    "recover_entry",
    "recovery_offset",
    "run_apsp_reduction",
    "run_incremental_worstcase",
    "run_matching_reduction",
    "run_oumv",
    "run_variant_reduction",
    "unit_threshold",
    "validate_grid_subgraph",
    "verify_unique_pm",
    "__version__",
]
