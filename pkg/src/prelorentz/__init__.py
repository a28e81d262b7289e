"""Coloured independence polynomials, glueing operators and exact
Lorentzian / pre-Lorentzian certification."""

from .exceptions import InputError
from .graphs import (
    ColouredGraph,
    GlueSpec,
    Graph,
    PartitionedGraph,
    disjoint_union,
    glue,
    glue_partitioned,
    graph_from_json,
    leafy_star,
    replace_w4,
    w4_from_leafy_stars,
)
from .independence import (
    brute_force_indep_sets,
    coloured_indep_poly,
    indep_poly,
    multivariate_indep_poly,
)
from .kernels import BACKEND
from .lorentz import (
    Certificate,
    ReducedHessianParams,
    case_reduced_hessian,
    descartes_positive_sign_test,
    hessian,
    is_lorentzian,
    is_lorentzian_bivariate,
    is_m_convex,
    is_pre_lorentzian,
    reduced_hessian,
    verify_case_matrix_against_direct_hessian,
)
from .matrices import positive_eigenvalue_count
from .polynomials import (
    MultiPoly,
    homogenize,
    identify_variables,
    multi_affine_part,
    partial_derivative,
    power_truncation,
    support,
)
from .sequences import has_internal_zeros, is_log_concave, is_ultra_log_concave, is_unimodal

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "ColouredGraph",
    "GlueSpec",
    "Graph",
    "PartitionedGraph",
    "disjoint_union",
    "glue",
    "glue_partitioned",
    "graph_from_json",
    "leafy_star",
    "replace_w4",
    "w4_from_leafy_stars",
    "brute_force_indep_sets",
    "coloured_indep_poly",
    "indep_poly",
    "multivariate_indep_poly",
    "BACKEND",
    "Certificate",
    "ReducedHessianParams",
    "case_reduced_hessian",
    "descartes_positive_sign_test",
    "hessian",
    "is_lorentzian",
    "is_lorentzian_bivariate",
    "is_m_convex",
    "is_pre_lorentzian",
    "reduced_hessian",
    "verify_case_matrix_against_direct_hessian",
    "positive_eigenvalue_count",
    "MultiPoly",
    "homogenize",
    "identify_variables",
    "multi_affine_part",
    "partial_derivative",
    "power_truncation",
    "support",
    "has_internal_zeros",
    "is_log_concave",
    "is_ultra_log_concave",
    "is_unimodal",
    "__version__",
]
