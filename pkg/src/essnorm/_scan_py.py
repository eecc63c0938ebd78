"""numpy fallback for the grid-scan inner loops.

Same contracts as the compiled module ``_scan``; kept in lockstep so either
backend can serve the searches.
"""

from __future__ import annotations

import numpy as np


def _abs_values(coeffs: np.ndarray, za: np.ndarray, zb: np.ndarray, pts: np.ndarray) -> np.ndarray:
    acc = np.zeros(pts.shape, dtype=np.complex128)
    if len(coeffs):
        # sequential power tables, not np.power: keeps rounding bit-identical
        # with the compiled kernel so tie-breaking picks the same argmax
        zp = [np.ones(pts.shape, dtype=np.complex128)]
        for _ in range(int(max(za, default=0))):
            zp.append(zp[-1] * pts)
        zq = [np.ones(pts.shape, dtype=np.complex128)]
        pc = np.conjugate(pts)
        for _ in range(int(max(zb, default=0))):
            zq.append(zq[-1] * pc)
        for t in range(len(coeffs)):
            acc += coeffs[t] * zp[int(za[t])] * zq[int(zb[t])]
    return np.abs(acc)


def min_abs_on_points(coeffs, za, zb, pts) -> float:
    """Minimum of |poly| over the point set."""
    pts = np.asarray(pts, dtype=np.complex128)
    if len(coeffs) == 0 or pts.size == 0:
        return 0.0
    return float(_abs_values(np.asarray(coeffs), np.asarray(za), np.asarray(zb), pts).min())


def max_abs_on_points(coeffs, za, zb, pts) -> tuple[float, int]:
    """Maximum of |poly| over the point set; returns (value, first argmax)."""
    pts = np.asarray(pts, dtype=np.complex128)
    if pts.size == 0:
        return 0.0, -1
    if len(coeffs) == 0:
        return 0.0, 0
    vals = _abs_values(np.asarray(coeffs), np.asarray(za), np.asarray(zb), pts)
    idx = int(np.argmax(vals))
    return float(vals[idx]), idx


def subdisk_maximin(coeffs, za, zb, centers, scales, unit_pts, prefac: float, best_init: float):
    """Maximize prefac * scale**2 * min_j |poly(center + scale * unit_pts[j])|.

    Candidates are visited in index order and only strict improvements over
    ``best_init`` are reported, matching the compiled backend.  The value of
    |poly| at ``unit_pts[0]`` (callers put the subdisk center there) gives a
    cheap upper bound used to skip hopeless candidates.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    za = np.asarray(za, dtype=np.int64)
    zb = np.asarray(zb, dtype=np.int64)
    centers = np.asarray(centers, dtype=np.complex128)
    scales = np.asarray(scales, dtype=np.float64)
    unit_pts = np.asarray(unit_pts, dtype=np.complex128)

    best, best_idx, best_min = float(best_init), -1, 0.0
    if centers.size == 0 or unit_pts.size == 0:
        return best, best_idx, best_min
    facs = prefac * scales**2
    if len(coeffs) == 0:
        return best, best_idx, best_min  # zero polynomial never strictly improves
    first = _abs_values(coeffs, za, zb, centers + scales * unit_pts[0])
    caps = facs * first
    for i in range(len(centers)):
        if caps[i] <= best:
            continue
        vals = _abs_values(coeffs, za, zb, centers[i] + scales[i] * unit_pts)
        inner = float(vals.min())
        v = facs[i] * inner
        if v > best:
            best, best_idx, best_min = v, i, inner
    return best, best_idx, best_min
