"""Separability and entanglement bounds for multimode squeezed thermal Gaussian states."""

from .bounds import (
    BoundReport,
    RelEntropyResult,
    conjecture_ratio,
    e3u_bound,
    e3ur_bound,
    pure_crossover,
    rel_entropy_closed,
    rel_entropy_gibbs,
    teleport_bound,
    upper_bound,
)
from .gaussian import (
    CovarianceMatrix,
    MstState,
    Normalization,
    Ordering,
    bosonic_g,
    mst_covariance,
    mst_gibbs_matrix,
    mst_symplectic,
    reduced_state,
    symplectic_eigenvalues,
    von_neumann_entropy,
)
from .separability import Classification, classify, classify_generic
from .structmat import AMatrix, amat_inverse, amat_mul, amat_trace

__version__ = "0.1.0"
