"""Multiqubit entanglement measures and weighted monogamy/polygamy bounds."""

from .qcore import (
    DensityMatrix,
    InvalidSubsystemError,
    MAX_QUBITS,
    PureState,
    SubsystemSet,
    haar_random_pure,
    linear_entropy,
    partial_trace,
    partial_transpose,
    reduced_density,
    schmidt_eigenvalues,
    schmidt_rank,
    spin_flip,
    to_density,
)
from .measures import (
    MeasureValue,
    coa_two_qubit,
    concurrence_pure,
    concurrence_two_qubit,
    cren_two_qubit,
    crenoa_two_qubit,
    negativity,
    negativity_pure_schmidt,
    pure_concurrence_vs_negativity_check,
)
from .bounds import (
    AlphaGrid,
    BoundReport,
    Grouping,
    InfeasibleGroupingError,
    OrderingCertificate,
    StateEvaluator,
    THEOREM_IDS,
    canonical_grouping,
    ckw_check,
    coa_dual_check,
    cor1_lower,
    cor2_bounds,
    feasibility,
    h_weight,
    jin_upper,
    lemma_check,
    optimize_grouping,
    ordered_groupings,
    pairwise_tables,
    sort_descending_then_check,
    thm1_upper,
    thm2_lower,
    thm3_lower,
    thm4_upper,
    thm5_upper,
    thm6_lower,
    thm7_lower,
    thm8_upper,
)
from . import gallery

__version__ = "0.1.0"

__all__ = [
    "AlphaGrid", "BoundReport", "DensityMatrix", "Grouping",
    "InfeasibleGroupingError", "InvalidSubsystemError", "MAX_QUBITS",
    "MeasureValue", "OrderingCertificate", "PureState", "StateEvaluator",
    "SubsystemSet", "THEOREM_IDS", "canonical_grouping", "ckw_check",
    "coa_dual_check", "coa_two_qubit", "concurrence_pure",
    "concurrence_two_qubit", "cor1_lower", "cor2_bounds", "cren_two_qubit",
    "crenoa_two_qubit", "feasibility", "gallery", "h_weight",
    "haar_random_pure", "jin_upper", "lemma_check", "linear_entropy",
    "negativity", "negativity_pure_schmidt", "optimize_grouping",
    "ordered_groupings", "pairwise_tables", "partial_trace",
    "partial_transpose", "pure_concurrence_vs_negativity_check",
    "reduced_density", "schmidt_eigenvalues", "schmidt_rank",
    "sort_descending_then_check", "spin_flip", "thm1_upper", "thm2_lower",
    "thm3_lower", "thm4_upper", "thm5_upper", "thm6_lower", "thm7_lower",
    "thm8_upper", "to_density",
]
