"""
Structured two-eigenvalue matrices and small dense symmetric/Hermitian helpers.

``A(x, y)`` is the m x m matrix acting as ``x`` on the uniform vector
``(1, ..., 1)/sqrt(m)`` and as ``y`` on its orthogonal complement.  Matrices
of this family commute and multiply parameter-wise, which is what makes the
squeezed thermal states below tractable in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "AMatrix",
    "amat_mul",
    "amat_inverse",
    "amat_trace",
    "check_symmetric",
    "check_hermitian",
    "herm_psd_check",
    "PSD_TOL",
]

PSD_TOL = 1e-9
_SYM_RTOL = 1e-12


@dataclass(frozen=True)
class AMatrix:
    """Parametric form of ``A(x, y)`` for ``m`` modes.

    Parameters
    ----------
    m : int
        Matrix dimension, at least 2.
    x : float
        Eigenvalue on the uniform vector.
    y : float
        Eigenvalue (multiplicity ``m - 1``) on the complement.
    """

    m: int
    x: float
    y: float

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise ValueError(f"AMatrix needs an integer m >= 2, got {self.m!r}")

    @property
    def diagonal(self) -> float:
        return (self.x + (self.m - 1) * self.y) / self.m

    @property
    def off_diagonal(self) -> float:
        return (self.x - self.y) / self.m

    def dense(self) -> np.ndarray:
        out = np.full((self.m, self.m), self.off_diagonal)
        np.fill_diagonal(out, self.diagonal)
        return out

    def eigenvalues(self) -> np.ndarray:
        """Sorted spectrum ``{x, y, ..., y}``."""
        return np.sort(np.array([self.x] + [self.y] * (self.m - 1), dtype=float))

    def __matmul__(self, other: "AMatrix") -> "AMatrix":
        if not isinstance(other, AMatrix):
            return NotImplemented
        return amat_mul(self, other)

    def __mul__(self, scalar: float) -> "AMatrix":
        return AMatrix(self.m, scalar * self.x, scalar * self.y)

    __rmul__ = __mul__


def amat_mul(a: AMatrix, b: AMatrix) -> AMatrix:
    """Product ``A(x, y) A(u, v) = A(xu, yv)``."""
    if a.m != b.m:
        raise ValueError(f"dimension mismatch: {a.m} vs {b.m}")
    return AMatrix(a.m, a.x * b.x, a.y * b.y)


def amat_inverse(a: AMatrix) -> AMatrix:
    if a.x == 0 or a.y == 0:
        raise np.linalg.LinAlgError("A(x, y) is singular when x or y is zero")
    return AMatrix(a.m, 1.0 / a.x, 1.0 / a.y)


def amat_trace(a: AMatrix) -> float:
    return a.x + (a.m - 1) * a.y


def check_symmetric(mat, rtol: float = _SYM_RTOL) -> np.ndarray:
    """Return ``mat`` as a float array, raising if it is not square symmetric."""
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    scale = max(np.abs(mat).max(initial=0.0), 1.0)
    if np.abs(mat - mat.T).max(initial=0.0) > rtol * scale:
        raise ValueError("matrix is not symmetric")
    return mat


def check_hermitian(mat, rtol: float = _SYM_RTOL) -> np.ndarray:
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    scale = max(np.abs(mat).max(initial=0.0), 1.0)
    if np.abs(mat - mat.conj().T).max(initial=0.0) > rtol * scale:
        raise ValueError("matrix is not Hermitian")
    return mat


def herm_psd_check(h, tol: float = PSD_TOL) -> bool:
    """True iff the smallest eigenvalue of the Hermitian matrix ``h`` is >= -tol."""
    h = check_hermitian(h)
    return bool(np.linalg.eigvalsh(h)[0] >= -tol)
