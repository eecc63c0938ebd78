# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops for scanning polynomial moduli over complex grids.

Mirrors the numpy implementation in ``_scan_py``; both must return the same
values up to floating-point evaluation order.
"""

from libc.stdlib cimport malloc, free
from libc.math cimport INFINITY

ctypedef double complex dc


cdef inline double _abs_eval(dc p, const dc* coeffs, const long* za, const long* zb,
                             Py_ssize_t nterms, dc* zp, dc* zq, long maxa, long maxb) noexcept nogil:
    cdef Py_ssize_t t
    cdef long k
    cdef dc pc = p.conjugate()
    cdef dc acc = 0
    zp[0] = 1.0
    for k in range(maxa):
        zp[k + 1] = zp[k] * p
    zq[0] = 1.0
    for k in range(maxb):
        zq[k + 1] = zq[k] * pc
    for t in range(nterms):
        acc = acc + coeffs[t] * zp[za[t]] * zq[zb[t]]
    return abs(acc)


cdef long _vec_max(const long[::1] v) noexcept nogil:
    cdef long best = 0
    cdef Py_ssize_t i
    for i in range(v.shape[0]):
        if v[i] > best:
            best = v[i]
    return best


def min_abs_on_points(const dc[::1] coeffs, const long[::1] za, const long[::1] zb,
                      const dc[::1] pts):
    """Minimum of |poly| over the point set."""
    cdef Py_ssize_t nterms = coeffs.shape[0], npts = pts.shape[0], j
    if nterms == 0 or npts == 0:
        return 0.0
    cdef long maxa = _vec_max(za), maxb = _vec_max(zb)
    cdef dc* zp = <dc*> malloc((maxa + 1) * sizeof(dc))
    cdef dc* zq = <dc*> malloc((maxb + 1) * sizeof(dc))
    if zp == NULL or zq == NULL:
        free(zp); free(zq)
        raise MemoryError()
    cdef double run = INFINITY, v
    try:
        for j in range(npts):
            v = _abs_eval(pts[j], &coeffs[0], &za[0], &zb[0], nterms, zp, zq, maxa, maxb)
            if v < run:
                run = v
    finally:
        free(zp); free(zq)
    return run


def max_abs_on_points(const dc[::1] coeffs, const long[::1] za, const long[::1] zb,
                      const dc[::1] pts):
    """Maximum of |poly| over the point set; returns (value, first argmax)."""
    cdef Py_ssize_t nterms = coeffs.shape[0], npts = pts.shape[0], j, bi = 0
    if npts == 0:
        return 0.0, -1
    if nterms == 0:
        return 0.0, 0
    cdef long maxa = _vec_max(za), maxb = _vec_max(zb)
    cdef dc* zp = <dc*> malloc((maxa + 1) * sizeof(dc))
    cdef dc* zq = <dc*> malloc((maxb + 1) * sizeof(dc))
    if zp == NULL or zq == NULL:
        free(zp); free(zq)
        raise MemoryError()
    cdef double best = -1.0, v
    try:
        for j in range(npts):
            v = _abs_eval(pts[j], &coeffs[0], &za[0], &zb[0], nterms, zp, zq, maxa, maxb)
            if v > best:
                best = v
                bi = j
    finally:
        free(zp); free(zq)
    return best, bi


def subdisk_maximin(const dc[::1] coeffs, const long[::1] za, const long[::1] zb,
                    const dc[::1] centers, const double[::1] scales,
                    const dc[::1] unit_pts, double prefac, double best_init):
    """Maximize prefac * scale**2 * min_j |poly(center + scale * unit_pts[j])|.

    Scans candidates in index order; a candidate is abandoned as soon as its
    running minimum can no longer strictly beat the incumbent, so only
    strict improvements over ``best_init`` are reported.  Returns
    ``(best, index, inner_min)`` with ``index = -1`` when nothing improved.
    """
    cdef Py_ssize_t nterms = coeffs.shape[0], ncand = centers.shape[0]
    cdef Py_ssize_t npts = unit_pts.shape[0], i, j
    if ncand == 0 or npts == 0:
        return best_init, -1, 0.0
    cdef long maxa = 0, maxb = 0
    if nterms > 0:
        maxa = _vec_max(za)
        maxb = _vec_max(zb)
    cdef dc* zp = <dc*> malloc((maxa + 1) * sizeof(dc))
    cdef dc* zq = <dc*> malloc((maxb + 1) * sizeof(dc))
    if zp == NULL or zq == NULL:
        free(zp); free(zq)
        raise MemoryError()
    cdef double best = best_init, best_min = 0.0, run, fac, v, s
    cdef Py_ssize_t best_idx = -1
    cdef dc ctr
    try:
        for i in range(ncand):
            s = scales[i]
            fac = prefac * s * s
            ctr = centers[i]
            run = INFINITY
            if nterms == 0:
                run = 0.0
            else:
                for j in range(npts):
                    v = _abs_eval(ctr + s * unit_pts[j], &coeffs[0], &za[0], &zb[0],
                                  nterms, zp, zq, maxa, maxb)
                    if v < run:
                        run = v
                        if fac * run <= best:
                            break
            v = fac * run
            if v > best:
                best = v
                best_idx = i
                best_min = run
    finally:
        free(zp); free(zq)
    return best, best_idx, best_min
