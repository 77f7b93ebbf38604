"""
Multimode squeezed thermal (mST) Gaussian states.

An mST state on ``m`` modes is the symmetric squeezed (GHZ-like) pure state
with every symplectic eigenvalue raised from 1/2 to ``N + 1/2``.  All states
here have zero mean, so the covariance matrix carries everything.

Conventions
-----------
* Quadratures ``x`` and ``p`` with ``[x_j, p_k] = i delta_jk``; vacuum
  covariance is ``I/2`` in the ``ALPHA`` normalization and ``I`` in ``GAMMA``.
* ``BLOCK_XP`` ordering is ``(x_1..x_m, p_1..p_m)``; ``INTERLEAVED`` is
  ``(x_1, p_1, x_2, p_2, ...)``.  The symplectic form for ``BLOCK_XP`` is
  ``[[0, I], [-I, 0]]``.
* Entropies are in nats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .structmat import AMatrix, check_symmetric

__all__ = [
    "Ordering",
    "Normalization",
    "MstState",
    "CovarianceMatrix",
    "GibbsMatrix",
    "SingleModeCM",
    "PureStateNoGibbs",
    "symplectic_form",
    "reorder",
    "mst_covariance",
    "mst_gibbs_matrix",
    "mst_symplectic",
    "symplectic_eigenvalues",
    "bosonic_g",
    "von_neumann_entropy",
    "reduced_state",
    "reduced_state_from_cm",
]


class PureStateNoGibbs(ValueError):
    """Raised when a Gibbs (exponential-form) matrix is requested for a pure state."""


class Ordering(str, enum.Enum):
    BLOCK_XP = "BlockXP"
    INTERLEAVED = "Interleaved"


class Normalization(str, enum.Enum):
    ALPHA = "Alpha"
    GAMMA = "Gamma"


@dataclass(frozen=True)
class MstState:
    """Squeezed thermal state of ``m`` modes.

    Parameters
    ----------
    m : int
        Number of modes, at least 2.
    r : float
        Squeezing parameter, ``r >= 0``.
    N : float
        Mean thermal photon number per mode, ``N >= 0``.
    """

    m: int
    r: float
    N: float

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise ValueError(f"mode count must be an integer >= 2, got {self.m!r}")
        if not (math.isfinite(self.r) and self.r >= 0):
            raise ValueError(f"squeezing r must be finite and >= 0, got {self.r!r}")
        if not (math.isfinite(self.N) and self.N >= 0):
            raise ValueError(f"photon number N must be finite and >= 0, got {self.N!r}")

    @classmethod
    def from_lambda_v(cls, lam: float, v: float, m: int = 3) -> "MstState":
        """Build from ``lambda = tanh r`` and ``v = N/(N+1)``, both in [0, 1)."""
        if not 0 <= lam < 1:
            raise ValueError(f"lambda must lie in [0, 1), got {lam!r}")
        if not 0 <= v < 1:
            raise ValueError(f"v must lie in [0, 1), got {v!r}")
        return cls(m=m, r=math.atanh(lam), N=v / (1.0 - v))

    @property
    def v(self) -> float:
        return self.N / (self.N + 1.0)

    @property
    def lam(self) -> float:
        return math.tanh(self.r)

    @property
    def t(self) -> float:
        return 2.0 * self.N + 1.0

    @property
    def s(self) -> float:
        return math.exp(2.0 * self.r)

    @property
    def is_pure(self) -> bool:
        return self.N == 0


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Second-moment matrix with explicit ordering and normalization."""

    m: int
    entries: np.ndarray
    ordering: Ordering = Ordering.BLOCK_XP
    normalization: Normalization = Normalization.ALPHA

    def __post_init__(self):
        entries = check_symmetric(self.entries)
        if entries.shape != (2 * self.m, 2 * self.m):
            raise ValueError(
                f"expected a {2 * self.m}x{2 * self.m} matrix, got {entries.shape}"
            )
        entries = entries.copy()
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "ordering", Ordering(self.ordering))
        object.__setattr__(self, "normalization", Normalization(self.normalization))

    def to_ordering(self, ordering: Ordering) -> "CovarianceMatrix":
        ordering = Ordering(ordering)
        if ordering is self.ordering:
            return self
        return CovarianceMatrix(
            self.m, reorder(self.entries, self.m, self.ordering, ordering),
            ordering, self.normalization,
        )

    def to_normalization(self, normalization: Normalization) -> "CovarianceMatrix":
        normalization = Normalization(normalization)
        if normalization is self.normalization:
            return self
        factor = 2.0 if normalization is Normalization.GAMMA else 0.5
        return CovarianceMatrix(self.m, factor * self.entries, self.ordering, normalization)

    def blocks(self) -> tuple[np.ndarray, np.ndarray]:
        """``(alpha_x, alpha_p)`` diagonal blocks in ``BLOCK_XP`` ordering."""
        e = self.to_ordering(Ordering.BLOCK_XP).entries
        m = self.m
        return e[:m, :m], e[m:, m:]


@dataclass(frozen=True, eq=False)
class GibbsMatrix:
    """Matrix ``M`` of ``rho = exp(-xi^T M xi / 2) / Z`` in ``BLOCK_XP`` ordering."""

    m: int
    entries: np.ndarray
    ordering: Ordering = Ordering.BLOCK_XP


@dataclass(frozen=True)
class SingleModeCM:
    """Diagonal single-mode covariance ``diag(a_x, a_p)`` (alpha normalization)."""

    a_x: float
    a_p: float

    @property
    def symplectic_eigenvalue(self) -> float:
        return math.sqrt(self.a_x * self.a_p)

    def entropy(self) -> float:
        return bosonic_g(self.symplectic_eigenvalue - 0.5)


def _permutation(m: int) -> np.ndarray:
    # index into BLOCK_XP for each INTERLEAVED slot
    return np.array([k for j in range(m) for k in (j, m + j)])


def symplectic_form(m: int, ordering: Ordering = Ordering.BLOCK_XP) -> np.ndarray:
    eye = np.eye(m)
    zero = np.zeros((m, m))
    omega = np.block([[zero, eye], [-eye, zero]])
    if Ordering(ordering) is Ordering.INTERLEAVED:
        perm = _permutation(m)
        omega = omega[np.ix_(perm, perm)]
    return omega


def reorder(mat: np.ndarray, m: int, source: Ordering, target: Ordering) -> np.ndarray:
    """Permute rows and columns of a 2m x 2m matrix between quadrature orderings."""
    source, target = Ordering(source), Ordering(target)
    mat = np.asarray(mat)
    if source is target:
        return mat.copy()
    perm = _permutation(m)
    if source is Ordering.BLOCK_XP:
        return mat[np.ix_(perm, perm)]
    inv = np.argsort(perm)
    return mat[np.ix_(inv, inv)]


def _xp_blocks(state: MstState, power: float) -> tuple[AMatrix, AMatrix]:
    # x block A(e^{2pr}, e^{-2pr}), p block with the roles swapped
    e = math.exp(2.0 * power * state.r)
    return AMatrix(state.m, e, 1.0 / e), AMatrix(state.m, 1.0 / e, e)


def _direct_sum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, k = a.shape[0], b.shape[0]
    out = np.zeros((n + k, n + k))
    out[:n, :n] = a
    out[n:, n:] = b
    return out


def mst_covariance(state: MstState) -> CovarianceMatrix:
    """Covariance ``(N+1/2) [A(s, 1/s) (+) A(1/s, s)]`` with ``s = e^{2r}``."""
    ax, ap = _xp_blocks(state, 1.0)
    scale = state.N + 0.5
    return CovarianceMatrix(state.m, scale * _direct_sum(ax.dense(), ap.dense()))


def mst_symplectic(state: MstState) -> np.ndarray:
    """Symplectic ``S = A(e^r, e^-r) (+) A(e^-r, e^r)`` diagonalizing the covariance."""
    sx, sp = _xp_blocks(state, 0.5)
    return _direct_sum(sx.dense(), sp.dense())


def mst_gibbs_matrix(state: MstState) -> GibbsMatrix:
    """Gibbs matrix ``log(1/v) [A(1/s, s) (+) A(s, 1/s)]``.

    Raises
    ------
    PureStateNoGibbs
        For ``N = 0``, where ``log(1/v)`` diverges.
    """
    if state.N <= 0:
        raise PureStateNoGibbs("a pure state has no finite Gibbs matrix")
    beta = math.log1p(1.0 / state.N)
    ax, ap = _xp_blocks(state, 1.0)
    return GibbsMatrix(state.m, beta * _direct_sum(ap.dense(), ax.dense()))


def symplectic_eigenvalues(cm: CovarianceMatrix) -> np.ndarray:
    """Symplectic spectrum (ascending, ``m`` values) of an alpha-normalized CM."""
    alpha = cm.to_normalization(Normalization.ALPHA)
    omega = symplectic_form(cm.m, alpha.ordering)
    eig = np.abs(np.linalg.eigvals(omega @ alpha.entries))
    return np.sort(eig)[::2]


def bosonic_g(x) -> float:
    """Entropy ``(x+1) log(x+1) - x log x`` of a thermal mode with mean photon ``x``."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("bosonic_g is defined for x >= 0 only")
    out = xlogy(x + 1.0, x + 1.0) - xlogy(x, x)
    return float(out) if out.ndim == 0 else out


def von_neumann_entropy(state: MstState) -> float:
    return state.m * bosonic_g(state.N)


def reduced_state(state: MstState, mode: int = 0) -> SingleModeCM:
    """Marginal of one mode; identical for every mode by permutation symmetry."""
    if not 0 <= mode < state.m:
        raise IndexError(f"mode {mode} out of range for m={state.m}")
    m, s = state.m, state.s
    scale = state.N + 0.5
    return SingleModeCM(
        a_x=scale * (s + (m - 1) / s) / m,
        a_p=scale * (1.0 / s + (m - 1) * s) / m,
    )


def reduced_state_from_cm(cm: CovarianceMatrix, mode: int = 0) -> SingleModeCM:
    """Same marginal read off the dense matrix; requires a diagonal 2x2 block."""
    if not 0 <= mode < cm.m:
        raise IndexError(f"mode {mode} out of range for m={cm.m}")
    e = cm.to_ordering(Ordering.BLOCK_XP).to_normalization(Normalization.ALPHA).entries
    sub = e[np.ix_([mode, cm.m + mode], [mode, cm.m + mode])]
    if abs(sub[0, 1]) > 1e-12 * max(1.0, abs(sub).max()):
        raise ValueError("reduced covariance has x-p correlations")
    return SingleModeCM(a_x=float(sub[0, 0]), a_p=float(sub[1, 1]))
