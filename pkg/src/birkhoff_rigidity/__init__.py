"""Birkhoff-James orthogonality, Birkhoff graphs and rigidity of unitary multipliers."""

from ._accel import backend_name
from .birkhoff import (
    Verdict,
    birkhoff_test,
    dual_orthogonality,
    is_birkhoff_orthogonal,
    is_birkhoff_orthogonal_dual,
    lemma_isoort_check,
    min_norm_over_line,
)
from .function_space import (
    FunctionSpaceModel,
    PhaseSpace,
    disjoint_sum,
    hilbert_from_kernel_matrix,
    is_1_independent,
    is_2_independent,
    lipschitz_space,
    point_evaluation,
    rkhs_from_kernel,
    sup_norm_space,
)
from .graph import BirkhoffGraph, build_graph, connected_components, export_dot
from .norms import (
    BlockSum,
    HilbertGram,
    LipschitzFin,
    Lp,
    OuterLp,
    Polyhedral,
    dual_norm_eval,
    face_dimension,
    norm_eval,
    sphere_face_dimension,
    support_face,
)
from .rigidity import (
    detect_mo,
    invariant_core,
    is_isometry,
    isometry_rigidity,
    mo_from_weight,
    propagate_eigenvalues,
    rigidity_verdict,
    wco_compare,
)

__version__ = "0.1.0"

__all__ = [
    "BirkhoffGraph",
    "BlockSum",
    "FunctionSpaceModel",
    "HilbertGram",
    "LipschitzFin",
    "Lp",
    "OuterLp",
    "PhaseSpace",
    "Polyhedral",
    "Verdict",
    "backend_name",
    "birkhoff_test",
    "build_graph",
    "connected_components",
    "detect_mo",
    "disjoint_sum",
    "dual_norm_eval",
    "dual_orthogonality",
    "export_dot",
    "face_dimension",
    "hilbert_from_kernel_matrix",
    "invariant_core",
    "is_1_independent",
    "is_2_independent",
    "is_birkhoff_orthogonal",
    "is_birkhoff_orthogonal_dual",
    "is_isometry",
    "isometry_rigidity",
    "lemma_isoort_check",
    "lipschitz_space",
    "min_norm_over_line",
    "mo_from_weight",
    "norm_eval",
    "point_evaluation",
    "propagate_eigenvalues",
    "rigidity_verdict",
    "rkhs_from_kernel",
    "sphere_face_dimension",
    "support_face",
    "sup_norm_space",
    "wco_compare",
]
