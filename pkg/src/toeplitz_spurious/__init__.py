"""Spurious eigenvalues of Toeplitz sections with two-step symbols."""
from .eig import ConvergenceError, Spectrum, counting_above, eigenvalues_hermitian, mu_view
from .kernels import BACKEND
from .matrices import (
    CrossLayout,
    HermitianMatrix,
    b_exact,
    b_series,
    cross_matrix,
    f_matrix,
    hs_norm,
    op_norm,
    squared_toeplitz,
    toeplitz,
)
from .symbol import (
    RationalAngle,
    TwoStepSymbol,
    affine_map_between_presets,
    fourier_coefficient_exact,
    fourier_coefficient_quadrature,
    make_rational_angle,
    pm1_symbol,
    zero_one_symbol,
)

__version__ = "0.1.0"
