"""Helmholtz-Hodge decompositions of linear and planar polynomial vector fields."""
from .linear_hhd import (
    LinearHhd,
    NonConvergenceError,
    QuadraticForm,
    RiccatiError,
    RiccatiReport,
    SolverOptions,
    TraceViolationError,
    is_strictly_orthogonal,
    lyapunov_candidate,
    orbital_derivative_linear,
    orthogonal_conjugate,
    riccati_residual,
    solve_2x2,
    solve_riccati,
    symmetric_split,
)
from .planar_hhd import (
    NoStrictDecomposition,
    PlanarHhd,
    QuadHomField,
    complex_potential,
    gauge_shift,
    orbital_derivative_W,
    quadratic_condition,
    solve_linear_planar,
    solve_quadratic,
    strict_orthogonality_defect,
)
from .sde_bridge import SdeDecomposition, SdeError, equivalence_condition, hhd_to_sde, sde_to_hhd
from .wirtinger import GaussianRational, RealPoly2, ZPoly

__version__ = "0.1.0"

__all__ = [
    "complex_potential",
    "equivalence_condition",
    "gauge_shift",
    "GaussianRational",
    "hhd_to_sde",
    "is_strictly_orthogonal",
    "LinearHhd",
    "lyapunov_candidate",
    "NonConvergenceError",
    "NoStrictDecomposition",
    "orbital_derivative_linear",
    "orbital_derivative_W",
    "orthogonal_conjugate",
    "PlanarHhd",
    "QuadHomField",
    "quadratic_condition",
    "QuadraticForm",
    "RealPoly2",
    "riccati_residual",
    "RiccatiError",
    "RiccatiReport",
    "sde_to_hhd",
    "SdeDecomposition",
    "SdeError",
    "solve_2x2",
    "solve_linear_planar",
    "solve_quadratic",
    "solve_riccati",
    "SolverOptions",
    "strict_orthogonality_defect",
    "symmetric_split",
    "TraceViolationError",
    "ZPoly",
]
