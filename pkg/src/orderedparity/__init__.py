"""Ordered parity polytopes, exactly.

Grouped ordered 0/1 vectors with an even or odd number of ones: complete
outer descriptions, a linear-time separation oracle, a flow-network
extended formulation, hedging witnesses that predict when parity cuts are
useless, and a cutting-plane driver for the graphic TSP relaxation that
reproduces the no-improvement effect.  All arithmetic is exact rational.
"""
from .core import (
    DomainError,
    GroupShape,
    GroupedPoint,
    ParityClass,
    Rat,
    alternating_sum,
    as_rat,
    hedging_capacity,
    integer_parity,
    is_ordered_unit_box,
)
from .separation import (
    LinearInequality,
    SeparationCertificate,
    admissible_f_sets,
    inequality_for_f_set,
    outer_description,
    separate,
)
from .extflow import (
    FlowNetwork,
    PathSolution,
    build_network,
    enumerate_projected_points,
    flow_lp_optimum,
    membership_lp,
    optimize,
    to_dot,
)
from .exactlp import (
    LPOutcome,
    LPStatus,
    LinearProgram,
    enumerate_points,
    glueing_check,
    hull_membership,
    solve,
)
from .hedging import (
    CutFamilyCondition,
    HedgingWitness,
    WitnessCase,
    hedging_witness,
    multi_hedging_witness,
    verify_hedging_optimality,
)
from .gtsp import (
    BinarizedSolution,
    CutConfig,
    CutKind,
    CutResult,
    Graph,
    SolveReport,
    cutting_plane_solve,
    cycle_graph,
    load_graph,
    min_odd_cut,
    petersen_graph,
    separate_connectivity,
    stoer_wagner_min_cut,
)

__version__ = "0.1.0"

__all__ = [
    "BinarizedSolution",
    "CutConfig",
    "CutFamilyCondition",
    "CutKind",
    "CutResult",
    "DomainError",
    "FlowNetwork",
    "Graph",
    "GroupShape",
    "GroupedPoint",
    "HedgingWitness",
    "LPOutcome",
    "LPStatus",
    "LinearInequality",
    "LinearProgram",
    "ParityClass",
    "PathSolution",
    "Rat",
    "SeparationCertificate",
    "SolveReport",
    "WitnessCase",
    "admissible_f_sets",
    "alternating_sum",
    "as_rat",
    "build_network",
    "cutting_plane_solve",
    "cycle_graph",
    "enumerate_points",
    "enumerate_projected_points",
    "flow_lp_optimum",
    "glueing_check",
    "hedging_capacity",
    "hedging_witness",
    "hull_membership",
    "inequality_for_f_set",
    "integer_parity",
    "is_ordered_unit_box",
    "load_graph",
    "membership_lp",
    "min_odd_cut",
    "multi_hedging_witness",
    "optimize",
    "outer_description",
    "petersen_graph",
    "separate",
    "separate_connectivity",
    "solve",
    "stoer_wagner_min_cut",
    "to_dot",
    "verify_hedging_optimality",
]
