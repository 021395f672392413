"""edgejump: a verification lab for Gaussian spectra with an edge jump.

Finite-n Hankel determinants, orthogonal polynomials and recurrence
coefficients for the jump-discontinuous Gaussian weight in arbitrary
precision; the Airy-pinned oscillatory Painleve II family with its
antiderivatives and pole traversal; Airy-kernel and finite-n Fredholm
determinants; Monte-Carlo twins (tridiagonal GUE, thinning, Plancherel
partitions); and drivers that confront each asymptotic prediction with the
exact finite-size data.
"""
from .precision import PrecisionCtx, hankel_ctx
from .weightlab import WeightParams, OPSystem, build_op_system
from .painleve import ASolution, solve_as
from .fredholm import airy_fredholm_det, finite_n_det, hermite_gram

__all__ = [
    "PrecisionCtx", "hankel_ctx", "WeightParams", "OPSystem",
    "build_op_system", "ASolution", "solve_as", "airy_fredholm_det",
    "finite_n_det", "hermite_gram",
]

__version__ = "0.1.0"
