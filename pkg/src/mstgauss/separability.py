"""
Separability classes of three-mode squeezed thermal states.

Two independent routes are provided.  The generic route runs the
partial-transposition test on the 6x6 covariance matrix and, for PPT
states, searches for a witness of the three-mode full-separability
conditions (a convex feasibility problem in the plane).  The closed route
uses the scalar thresholds in ``(lambda, v)`` coordinates:

* fully inseparable  iff ``cosh^2 2r > 9/32 (t + 1/t)^2 - 1/8``
* fully separable    iff ``v >= lambda``

with ``t = 2N + 1``.  Boundary points fall into the less entangled class.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .gaussian import (
    CovarianceMatrix,
    MstState,
    Normalization,
    Ordering,
    mst_covariance,
    symplectic_form,
)
from .structmat import PSD_TOL, check_hermitian, herm_psd_check

__all__ = [
    "Classification",
    "FeasibilityProblem",
    "FeasibilityResult",
    "partial_transpose",
    "ppt_test",
    "ppt_min_eigenvalue",
    "npt_threshold_closed",
    "ppt_lambda_threshold",
    "giedke_K",
    "full_sep_feasibility",
    "fully_separable_closed",
    "classify",
    "classify_generic",
    "ellipse_slacks",
    "boundary_distances",
]

FEASIBILITY_GRID = 201
_BOUNDARY_RTOL = 1e-12


class Classification(str, enum.Enum):
    FULLY_INSEPARABLE = "FullyInseparable"
    BISEPARABLE = "Biseparable"
    FULLY_SEPARABLE = "FullySeparable"

    @property
    def rank(self) -> int:
        """0 for the least entangled class, 2 for the most."""
        return {"FullySeparable": 0, "Biseparable": 1, "FullyInseparable": 2}[self.value]

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class FeasibilityProblem:
    K: np.ndarray
    Ktilde: np.ndarray
    L: np.ndarray
    Ltilde: np.ndarray

    def __post_init__(self):
        for name in ("K", "Ktilde"):
            object.__setattr__(self, name, check_hermitian(getattr(self, name), rtol=1e-10))

    @property
    def traces(self) -> tuple[float, float]:
        return float(np.trace(self.K).real), float(np.trace(self.Ktilde).real)

    @property
    def dets(self) -> tuple[float, float]:
        return float(np.linalg.det(self.K).real), float(np.linalg.det(self.Ktilde).real)

    def slack(self, y, z):
        """Smallest constraint slack at ``(y, z)``; vectorized over arrays."""
        y = np.asarray(y, dtype=float)
        z = np.asarray(z, dtype=float)
        x = np.sqrt(1.0 + y * y + z * z)
        tr, trt = self.traces
        det, dett = self.dets
        disk = min(tr, trt) - 2.0 * x
        ell = det + 1.0 + self.L[0] * y + self.L[1] * z - x * tr
        ellt = dett + 1.0 + self.Ltilde[0] * y + self.Ltilde[1] * z - x * trt
        return np.minimum(disk, np.minimum(ell, ellt))


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: tuple[float, float] | None
    margin: float


def _as_gamma(cm: CovarianceMatrix) -> CovarianceMatrix:
    return cm.to_normalization(Normalization.GAMMA)


def _p_index(cm: CovarianceMatrix, mode: int) -> int:
    if not 0 <= mode < cm.m:
        raise IndexError(f"mode {mode} out of range for m={cm.m}")
    return cm.m + mode if cm.ordering is Ordering.BLOCK_XP else 2 * mode + 1


def partial_transpose(cm: CovarianceMatrix, mode: int) -> CovarianceMatrix:
    """Flip the sign of the chosen mode's momentum row and column."""
    k = _p_index(cm, mode)
    flip = np.ones(2 * cm.m)
    flip[k] = -1.0
    return CovarianceMatrix(
        cm.m, flip[:, None] * cm.entries * flip[None, :], cm.ordering, cm.normalization
    )


def ppt_min_eigenvalue(cm: CovarianceMatrix, mode: int) -> float:
    """Smallest eigenvalue of ``gamma~ + i Omega`` after transposing ``mode``."""
    pt = partial_transpose(_as_gamma(cm), mode)
    herm = pt.entries + 1j * symplectic_form(cm.m, cm.ordering)
    return float(np.linalg.eigvalsh(herm)[0])


def ppt_test(cm: CovarianceMatrix, mode: int = 0, tol: float = PSD_TOL) -> bool:
    """Whether the state stays physical under partial transposition of ``mode``.

    ``False`` certifies entanglement across the cut ``mode | rest``.
    """
    pt = partial_transpose(_as_gamma(cm), mode)
    return herm_psd_check(pt.entries + 1j * symplectic_form(cm.m, cm.ordering), tol)


def _require_three(state: MstState) -> None:
    if state.m != 3:
        raise ValueError(f"this test is for three-mode states, got m={state.m}")


def npt_threshold_closed(state: MstState) -> bool:
    """Closed-form full-inseparability test (strict: threshold points are PPT)."""
    _require_three(state)
    t = state.t
    rhs = 9.0 / 32.0 * (t + 1.0 / t) ** 2 - 1.0 / 8.0
    return math.cosh(2.0 * state.r) ** 2 > rhs


def ppt_lambda_threshold(v: float) -> float:
    """``lambda`` at which a three-mode state with this ``v`` stops being PPT."""
    t = (1.0 + v) / (1.0 - v)
    c = math.sqrt(9.0 / 32.0 * (t + 1.0 / t) ** 2 - 1.0 / 8.0)
    # cosh 2r = (1 + lambda^2)/(1 - lambda^2)
    return math.sqrt((c - 1.0) / (c + 1.0))


def _single_mode_j() -> np.ndarray:
    return np.array([[0.0, -1.0], [1.0, 0.0]])


def giedke_K(cm: CovarianceMatrix) -> FeasibilityProblem:
    """Schur-type reductions ``K`` and ``K~`` of a three-mode CM onto its first mode.

    The CM is brought to interleaved ordering and gamma normalization, split as
    ``[[A, C], [C^T, B]]`` with ``A`` the first-mode 2x2 block, and
    ``K = A - C (B - iJ)^-1 C^T`` with ``J~ = J (+) (-J)`` for ``K~``.
    """
    if cm.m != 3:
        raise ValueError(f"giedke_K needs a three-mode CM, got m={cm.m}")
    g = _as_gamma(cm).to_ordering(Ordering.INTERLEAVED).entries
    a, c, b = g[:2, :2], g[:2, 2:], g[2:, 2:]
    j1 = _single_mode_j()
    zero = np.zeros((2, 2))
    j = np.block([[j1, zero], [zero, j1]])
    jt = np.block([[j1, zero], [zero, -j1]])

    def reduce(jmat):
        try:
            inner = np.linalg.solve(b - 1j * jmat, c.T)
        except np.linalg.LinAlgError as exc:
            raise np.linalg.LinAlgError("B - iJ is singular; not a valid CM") from exc
        k = a - c @ inner
        return 0.5 * (k + k.conj().T)

    k, kt = reduce(j), reduce(jt)

    def lvec(mat):
        return np.array([(mat[0, 0] - mat[1, 1]).real, 2.0 * mat[0, 1].real])

    return FeasibilityProblem(K=k, Ktilde=kt, L=lvec(k), Ltilde=lvec(kt))


def full_sep_feasibility(
    fp: FeasibilityProblem,
    tol: float = PSD_TOL,
    grid_n: int = FEASIBILITY_GRID,
) -> FeasibilityResult:
    """Search for ``(y, z)`` satisfying the three full-separability inequalities.

    The disk constraint ``2 sqrt(1 + y^2 + z^2) <= min(tr K, tr K~)`` bounds the
    search region.  The slack function is concave (each constraint is affine
    minus a positive multiple of a convex function), so a coarse grid followed
    by successive zooming around the best point locates its maximum.

    Returns
    -------
    FeasibilityResult
        ``margin`` is the best (largest) smallest-slack found.
    """
    tr, trt = fp.traces
    if tr <= 0 or trt <= 0:
        raise ValueError("K and K~ must have positive traces")
    half = min(tr, trt) / 2.0
    if half < 1.0 - tol:
        # empty disk: report the slack at the origin, the disk's nominal centre
        return FeasibilityResult(False, None, float(fp.slack(0.0, 0.0)))
    radius = math.sqrt(max(half * half - 1.0, 0.0))

    origin = float(fp.slack(0.0, 0.0))
    if origin >= -tol:
        return FeasibilityResult(True, (0.0, 0.0), origin)

    axis = np.linspace(-radius, radius, grid_n) if radius > 0 else np.zeros(1)
    yy, zz = np.meshgrid(axis, axis, indexing="ij")
    vals = fp.slack(yy, zz)
    idx = np.unravel_index(np.argmax(vals), vals.shape)
    best_y, best_z, best = float(yy[idx]), float(zz[idx]), float(vals[idx])

    width = 2.0 * radius / max(grid_n - 1, 1)
    local = np.linspace(-1.0, 1.0, 21)
    while best < -tol and width > tol:
        yy, zz = np.meshgrid(best_y + width * local, best_z + width * local, indexing="ij")
        vals = fp.slack(yy, zz)
        idx = np.unravel_index(np.argmax(vals), vals.shape)
        if vals[idx] > best:
            best_y, best_z, best = float(yy[idx]), float(zz[idx]), float(vals[idx])
        width *= 0.5

    if best >= -tol:
        return FeasibilityResult(True, (best_y, best_z), best)
    return FeasibilityResult(False, None, best)


def fully_separable_closed(state: MstState) -> bool:
    """``v >= lambda``, compared as ``t >= s``.

    Equality is inclusive up to the rounding of the ``(lambda, v) -> (r, N)``
    conversion, so states built on the boundary land in the separable class.
    """
    t, s = state.t, state.s
    return t >= s or math.isclose(t, s, rel_tol=_BOUNDARY_RTOL)


def classify(state: MstState, method: str = "closed", tol: float = PSD_TOL) -> Classification:
    """Separability class of a three-mode squeezed thermal state.

    Parameters
    ----------
    state : MstState
        Must have ``m == 3``.
    method : {"closed", "generic"}
        Scalar thresholds or matrix tests.
    tol : float
        Eigenvalue / slack tolerance for the generic route.
    """
    _require_three(state)
    if method == "generic":
        return classify_generic(state, tol)
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    if npt_threshold_closed(state):
        return Classification.FULLY_INSEPARABLE
    if fully_separable_closed(state):
        return Classification.FULLY_SEPARABLE
    return Classification.BISEPARABLE


def classify_generic(state: MstState, tol: float = PSD_TOL) -> Classification:
    _require_three(state)
    cm = mst_covariance(state)
    # permutation symmetry: one cut decides all three
    if not ppt_test(cm, 0, tol):
        return Classification.FULLY_INSEPARABLE
    if full_sep_feasibility(giedke_K(cm), tol).feasible:
        return Classification.FULLY_SEPARABLE
    return Classification.BISEPARABLE


def ellipse_slacks(state: MstState, y: float) -> dict:
    """Diagnostic: reduced one-variable forms of the two ellipse inequalities.

    Evaluated at ``z = 0`` with ``x = sqrt(1 + y^2)``.  The second inequality is
    reported with both candidate y-coefficients (``Delta`` and ``Delta/3``)
    alongside the generic slacks, so the scale-free sign pattern can be
    compared.  Not used for classification.
    """
    _require_three(state)
    t, s = state.t, state.s
    x = math.sqrt(1.0 + y * y)
    tt, ss, sd = t + 1.0 / t, s + 1.0 / s, s - 1.0 / s
    delta = (tt ** 2 - 4.0 / 3.0 * (ss ** 2 - 1.0)) / (tt ** 2 - 4.0 / 9.0 * (ss ** 2 + 5.0))
    fp = giedke_K(mst_covariance(state))
    tr, trt = fp.traces
    det, dett = fp.dets
    return {
        "delta": delta,
        "closed_first": tt - ss * x - sd * y / 3.0,
        "closed_second_delta": tt - ss * x - delta * sd * y,
        "closed_second_delta_over_3": tt - ss * x - delta * sd * y / 3.0,
        "generic_first": det + 1.0 + fp.L[0] * y - x * tr,
        "generic_second": dett + 1.0 + fp.Ltilde[0] * y - x * trt,
    }


def boundary_distances(lam: float, v: float) -> tuple[float, float]:
    """Euclidean distances in the ``(lambda, v)`` plane to the two class boundaries.

    Returns ``(to_separable_line, to_ppt_curve)``; the first boundary is
    ``v = lambda``, the second the closed-form PPT threshold curve.
    """
    to_line = abs(lam - v) / math.sqrt(2.0)
    gap = abs(lam - ppt_lambda_threshold(v))
    # the nearest curve point lies within `gap` of v
    lo, hi = max(v - gap, 0.0), min(v + gap, 1.0 - 1e-12)
    vs = np.linspace(lo, hi, 201)
    curve = np.array([ppt_lambda_threshold(u) for u in vs])
    d2 = (curve - lam) ** 2 + (vs - v) ** 2
    k = int(np.argmin(d2))
    a, b = vs[max(k - 1, 0)], vs[min(k + 1, len(vs) - 1)]
    for _ in range(60):
        c1, c2 = a + (b - a) / 3.0, b - (b - a) / 3.0
        f1 = (ppt_lambda_threshold(c1) - lam) ** 2 + (c1 - v) ** 2
        f2 = (ppt_lambda_threshold(c2) - lam) ** 2 + (c2 - v) ** 2
        if f1 <= f2:
            b = c2
        else:
            a = c1
    best = min(d2[k], (ppt_lambda_threshold(a) - lam) ** 2 + (a - v) ** 2)
    return to_line, math.sqrt(best)
