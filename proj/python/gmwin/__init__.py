"""Exact window, wall-crossing and fixed-point index computations for Gm-actions."""

from gmwin._core import (
    CertificationError,
    GmSpace,
    GradedComplex,
    KClass,
    LaurentPolynomial,
    LaurentSeries,
    atiyah_bott_index,
    beta_lower,
    chambers,
    cohomology,
    euler_class,
    fixed_components,
    invert_euler,
    k_point,
    koszul_truncation,
    monodromy_matrix,
    quasi_symmetric,
    restricted_local_cohomology,
    rhom,
    run_job,
    semistable_index,
    sheaf_character,
    sod_decompose,
    tensor,
    unstable_koszul_class,
    unstable_locus,
    wall_crossing_delta,
    wall_type,
    window_basis_matrix,
    window_bounds,
    window_lattice_points,
    window_membership,
)

__all__ = [
    "CertificationError",
    "GmSpace",
    "GradedComplex",
    "KClass",
    "LaurentPolynomial",
    "LaurentSeries",
    "atiyah_bott_index",
    "beta_lower",
    "chambers",
    "cohomology",
    "euler_class",
    "fixed_components",
    "invert_euler",
    "k_point",
    "koszul_truncation",
    "monodromy_matrix",
    "quasi_symmetric",
    "restricted_local_cohomology",
    "rhom",
    "run_job",
    "semistable_index",
    "sheaf_character",
    "sod_decompose",
    "tensor",
    "unstable_koszul_class",
    "unstable_locus",
    "wall_crossing_delta",
    "wall_type",
    "window_basis_matrix",
    "window_bounds",
    "window_lattice_points",
    "window_membership",
]

__version__ = "0.1.0"
