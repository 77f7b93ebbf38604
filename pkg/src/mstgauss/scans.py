"""
Parameter sweeps over the ``(lambda, v)`` plane.

Each sweep returns a header and a list of row tuples; writing them is the
CLI's job.  Grids are cell centres of a uniform partition of each range.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .bounds import SeparableStateWarning, teleport_bound, to_base, upper_bound
from .gaussian import MstState, mst_covariance
from .separability import (
    Classification,
    boundary_distances,
    classify,
    classify_generic,
    ppt_min_eigenvalue,
)
from .structmat import PSD_TOL

__all__ = [
    "ScanConfig",
    "cell_centers",
    "classify_scan",
    "classify_mismatches",
    "class_regions",
    "bound_scan",
    "pure_curves",
    "conjecture_rows",
    "ppt_threshold_bisect",
]

BOUNDARY_BAND = 1e-4


@dataclass(frozen=True)
class ScanConfig:
    grid_n: int = 200
    lambda_range: tuple[float, float] = (0.001, 0.999)
    v_range: tuple[float, float] = (0.001, 0.999)
    log_base: str = "nats"
    tol: float = PSD_TOL

    def __post_init__(self):
        if self.grid_n < 2:
            raise ValueError("grid_n must be >= 2")
        for name in ("lambda_range", "v_range"):
            lo, hi = getattr(self, name)
            if not 0 < lo < hi < 1:
                raise ValueError(f"{name} must satisfy 0 < lo < hi < 1, got {(lo, hi)}")
        if self.log_base not in ("nats", "bits"):
            raise ValueError(f"unknown log base {self.log_base!r}")

    @property
    def lambdas(self) -> np.ndarray:
        return cell_centers(*self.lambda_range, self.grid_n)

    @property
    def vs(self) -> np.ndarray:
        return cell_centers(*self.v_range, self.grid_n)


def cell_centers(lo: float, hi: float, n: int) -> np.ndarray:
    return lo + (np.arange(n) + 0.5) * (hi - lo) / n


def classify_scan(cfg: ScanConfig) -> tuple[list[str], list[tuple]]:
    """Closed and generic classes, lambda-major then v."""
    rows = []
    for lam in cfg.lambdas:
        for v in cfg.vs:
            state = MstState.from_lambda_v(float(lam), float(v), 3)
            rows.append((
                float(lam), float(v),
                classify(state).value,
                classify_generic(state, cfg.tol).value,
            ))
    return ["lambda", "v", "class", "class_generic"], rows


def classify_mismatches(rows, band: float = BOUNDARY_BAND) -> list[tuple]:
    """Rows where the two class columns disagree farther than ``band`` from both boundaries."""
    bad = []
    for lam, v, closed, generic in rows:
        if closed == generic:
            continue
        if min(boundary_distances(lam, v)) > band:
            bad.append((lam, v, closed, generic))
    return bad


def class_regions(rows, n_lambda: int, n_v: int) -> dict[str, int]:
    """Number of 8-connected components of each class on the scan grid.

    Diagonal neighbours count as connected: the biseparable strip hugs the
    line ``v = lambda`` and is narrower than one cell near its ends.
    """
    labels = np.array([r[2] for r in rows]).reshape(n_lambda, n_v)
    structure = np.ones((3, 3), dtype=bool)
    return {
        c.value: int(ndimage.label(labels == c.value, structure=structure)[1])
        for c in Classification
    }


def bound_scan(cfg: ScanConfig) -> tuple[list[str], list[tuple]]:
    rows = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SeparableStateWarning)
        for lam in cfg.lambdas:
            for v in cfg.vs:
                res = upper_bound(MstState.from_lambda_v(float(lam), float(v), 3))
                rows.append((float(lam), float(v), to_base(res.value, cfg.log_base), res.argmin_r))
    return ["lambda", "v", "e3ur", "argmin_r"], rows


def pure_curves(cfg: ScanConfig) -> tuple[list[str], list[tuple]]:
    """Pure-state bounds along ``lambda``; ``v_range`` is ignored."""
    rows = []
    for lam in cfg.lambdas:
        state = MstState.from_lambda_v(float(lam), 0.0, 3)
        rel = to_base(upper_bound(state).value, cfg.log_base)
        tele = to_base(teleport_bound(state), cfg.log_base)
        rows.append((float(lam), rel, tele, min(rel, tele)))
    return ["lambda", "e3ur", "teleport", "e3u"], rows


def conjecture_rows(cfg: ScanConfig, m_max: int) -> tuple[list[str], list[tuple]]:
    """Ratio ``E_mur / E_2ur`` against ``m/2`` at entangled grid points (``lambda > v``)."""
    if m_max < 3:
        raise ValueError("m_max must be >= 3")
    points = [(float(lam), float(v)) for lam in cfg.lambdas for v in cfg.vs if lam > v]
    two_mode = {p: upper_bound(MstState.from_lambda_v(p[0], p[1], 2)).value for p in points}
    rows = []
    for m in range(3, m_max + 1):
        for lam, v in points:
            e_m = upper_bound(MstState.from_lambda_v(lam, v, m)).value
            ratio = e_m / two_mode[(lam, v)]
            rows.append((m, lam, v, ratio, m / 2.0, abs(ratio - m / 2.0)))
    return ["m", "lambda", "v", "ratio", "expected", "abs_err"], rows


def ppt_threshold_bisect(v: float, m: int = 3, xtol: float = 1e-13) -> float:
    """Smallest ``lambda`` at which the one-mode partial transpose turns non-positive.

    Returns ``nan`` if the state stays PPT up to ``lambda = 1 - 1e-9``.
    """
    def npt(lam):
        cm = mst_covariance(MstState.from_lambda_v(lam, v, m))
        return ppt_min_eigenvalue(cm, 0) < 0.0

    lo, hi = 0.0, 1.0 - 1e-9
    if not npt(hi):
        return math.nan
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if npt(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)

