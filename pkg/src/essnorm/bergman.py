"""Bergman-space primitives on a product of two disks.

Monomials are orthogonal for the area measure, and every inner product of
polynomial symbols reduces to radial moments that are rational multiples of
pi per coordinate.  This module keeps that calculus exact (values are
:class:`~essnorm.exact.PiScalar`), provides the orthonormal monomial basis
and reproducing kernels, numeric quadrature rules for cross-checks, and the
norm-balance identity for boundary-vanishing functions on a single disk.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import pi, sqrt
from typing import Callable, NamedTuple

import numpy as np

from .domain import ProductDomain, UNIT_BIDISK
from .exact import ExactComplex, PiScalar, _to_fraction
from .symbols import Symbol, circle_residual

__all__ = [
    "BasisIndex",
    "ProductDomain",
    "UNIT_BIDISK",
    "moment",
    "inner_product",
    "norm_sq",
    "project",
    "mono_norm_sq",
    "basis_norm",
    "basis_value",
    "bergman_kernel",
    "normalized_kernel_coeffs",
    "QuadRule",
    "quad_integrate",
    "quad_integrate2",
    "symbol_values",
    "derivative_norm_balance",
]


class BasisIndex(NamedTuple):
    """Bidegree (m, n) of the monomial z**m w**n."""

    m: int
    n: int

    @property
    def weight(self) -> int:
        return (self.m + 1) * (self.n + 1)

    @property
    def degree(self) -> int:
        return self.m + self.n


def moment(a: int, b: int, radius: Fraction | float) -> PiScalar:
    """Exact disk moment of z**a conj(z)**b over ``|z| < radius``.

    Vanishes unless a == b; the surviving value is
    ``pi * radius**(2a+2) / (a+1)``.
    """
    if a != b:
        return PiScalar.zero()
    r = _to_fraction(radius)
    return PiScalar(Fraction(r ** (2 * a + 2), a + 1), 1)


def inner_product(f: Symbol, g: Symbol, dom: ProductDomain | None = None) -> PiScalar:
    """Exact area inner product <f, g> over the product domain."""
    dom = dom or UNIT_BIDISK
    # Terms couple only within matching charge classes (a-b, c-d).
    buckets: dict[tuple[int, int], list] = {}
    for key, val in g.terms.items():
        a, b, c, d = key
        buckets.setdefault((a - b, c - d), []).append((key, val))
    total = PiScalar.zero()
    for (a1, b1, c1, d1), v1 in f.terms.items():
        for (a2, b2, c2, d2), v2 in buckets.get((a1 - b1, c1 - d1), ()):
            mz = moment(a1 + b2, b1 + a2, dom.r1)
            mw = moment(c1 + d2, d1 + c2, dom.r2)
            total = total + mz * mw * (v1 * v2.conjugate())
    return total


def norm_sq(f: Symbol, dom: ProductDomain | None = None) -> PiScalar:
    return inner_product(f, f, dom)


def project(f: Symbol, dom: ProductDomain | None = None) -> Symbol:
    """Orthogonal projection of a polynomial symbol onto the holomorphic ones.

    Each mixed monomial z**A zbar**B w**C wbar**D lands on z**(A-B) w**(C-D)
    (when both differences are nonnegative) with an exact rational ratio of
    moments; all other monomials project to zero.
    """
    dom = dom or UNIT_BIDISK
    out: dict[tuple[int, int, int, int], ExactComplex] = {}
    for (A, B, C, D), coeff in f.terms.items():
        if A < B or C < D:
            continue
        k, l = A - B, C - D
        ratio = Fraction((k + 1) * (l + 1), (A + 1) * (C + 1))
        scaled = coeff * (ratio * dom.r1 ** (2 * B) * dom.r2 ** (2 * D))
        key = (k, 0, l, 0)
        cur = out.get(key)
        out[key] = scaled if cur is None else cur + scaled
    return Symbol(out, f.exact)


def mono_norm_sq(idx: BasisIndex, dom: ProductDomain | None = None) -> PiScalar:
    dom = dom or UNIT_BIDISK
    return moment(idx.m, idx.m, dom.r1) * moment(idx.n, idx.n, dom.r2)


def basis_norm(idx: BasisIndex, dom: ProductDomain | None = None) -> float:
    """Norm of the monomial z**m w**n, i.e. 1 / normalization constant."""
    return sqrt(float(mono_norm_sq(idx, dom)))


def basis_value(idx: BasisIndex, zval: complex, wval: complex, dom: ProductDomain | None = None) -> complex:
    """Value of the orthonormal basis element e_{mn} at a point."""
    return (zval**idx.m) * (wval**idx.n) / basis_norm(idx, dom)


def _disk_kernel(zval: complex, pval: complex, radius: float) -> complex:
    den = radius * radius - zval * complex(pval).conjugate()
    return radius * radius / (pi * den * den)


def bergman_kernel(zp: tuple[complex, complex], pq: tuple[complex, complex], dom: ProductDomain | None = None) -> complex:
    """Reproducing kernel of the product domain (product of disk kernels)."""
    dom = dom or UNIT_BIDISK
    return _disk_kernel(zp[0], pq[0], float(dom.r1)) * _disk_kernel(zp[1], pq[1], float(dom.r2))


def normalized_kernel_coeffs(p: complex, degree: int, radius: float = 1.0) -> tuple[np.ndarray, float]:
    """Basis coefficients of the unit-norm kernel at ``p`` on one disk.

    Returns the coefficients against e_0 .. e_degree together with the exact
    truncated squared-norm deficit (the mass carried by indices beyond
    ``degree``).  With ``q = p / radius`` the m-th coefficient is
    ``sqrt(m+1) * conj(q)**m * (1 - |q|**2)`` and the deficit is
    ``(M+2) x**(M+1) - (M+1) x**(M+2)`` at ``x = |q|**2``.
    """
    q = complex(p) / radius
    x = abs(q) ** 2
    if x >= 1.0:
        raise ValueError("kernel point must lie inside the open disk")
    m = np.arange(degree + 1)
    coeffs = np.sqrt(m + 1.0) * (np.conjugate(q) ** m) * (1.0 - x)
    tail = (degree + 2) * x ** (degree + 1) - (degree + 1) * x ** (degree + 2)
    return coeffs.astype(np.complex128), float(tail)


# -- quadrature ------------------------------------------------------------


@dataclass(frozen=True)
class QuadRule:
    """Tensor rule on a disk or wedge in one complex variable.

    Radial direction: Gauss-Legendre in ``u = (r / radius)**radial_power``;
    with ``radial_power = s`` the area element becomes
    ``(radius**2 / s) * u**(2/s - 1) du``, so integrands behaving like
    ``r**(s-2)`` are integrated exactly.  Angular direction: uniform
    (trapezoidal, spectrally accurate on full circles) for disks,
    Gauss-Legendre on the angular interval for wedges.
    """

    region: str = "disk"
    radius: float = 1.0
    n_radial: int = 32
    n_angular: int = 64
    radial_power: float = 2.0
    theta_lo: float = -pi
    theta_hi: float = pi

    def __post_init__(self) -> None:
        if self.region not in ("disk", "wedge"):
            raise ValueError("region must be 'disk' or 'wedge'")
        if self.radius <= 0 or self.n_radial < 1 or self.n_angular < 1:
            raise ValueError("invalid quadrature parameters")
        if self.radial_power <= 0:
            raise ValueError("radial_power must be positive")
        if self.region == "wedge" and not self.theta_lo < self.theta_hi:
            raise ValueError("empty angular interval")

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Complex nodes and positive area weights."""
        x, gw = np.polynomial.legendre.leggauss(self.n_radial)
        u = 0.5 * (x + 1.0)
        s = self.radial_power
        r = self.radius * u ** (1.0 / s)
        wr = gw * 0.5 * (self.radius**2 / s) * u ** (2.0 / s - 1.0)

        if self.region == "disk":
            theta = 2.0 * pi * np.arange(self.n_angular) / self.n_angular
            wt = np.full(self.n_angular, 2.0 * pi / self.n_angular)
        else:
            xa, ga = np.polynomial.legendre.leggauss(self.n_angular)
            half = 0.5 * (self.theta_hi - self.theta_lo)
            theta = self.theta_lo + half * (xa + 1.0)
            wt = ga * half

        pts = (r[:, None] * np.exp(1j * theta[None, :])).ravel()
        wts = (wr[:, None] * wt[None, :]).ravel()
        return pts, wts


def symbol_values(s: Symbol, zs: np.ndarray, ws: np.ndarray) -> np.ndarray:
    """Vectorized evaluation of a symbol on broadcastable complex arrays."""
    zs = np.asarray(zs, dtype=np.complex128)
    ws = np.asarray(ws, dtype=np.complex128)
    total = np.zeros(np.broadcast(zs, ws).shape, dtype=np.complex128)
    zc, wc = np.conjugate(zs), np.conjugate(ws)
    for (a, b, c, d), coeff in s.terms.items():
        total += complex(coeff) * zs**a * zc**b * ws**c * wc**d
    return total


def _eval_on(f, pts: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(pts), dtype=np.complex128)
        if vals.shape == pts.shape:
            return vals
    except Exception:
        pass
    return np.array([f(p) for p in pts], dtype=np.complex128)


def quad_integrate(f: "Symbol | Callable", rule: QuadRule) -> complex:
    """Integrate over the rule's region.

    ``f`` may be a one-variable :class:`Symbol` (in z, conj z), a callable
    vectorized over complex arrays, or a plain pointwise callable.
    """
    pts, wts = rule.nodes()
    if isinstance(f, Symbol):
        vals = symbol_values(f, pts, np.zeros_like(pts))
    else:
        vals = _eval_on(f, pts)
    return complex(np.sum(wts * vals))


def quad_integrate2(f: Callable, rule_z: QuadRule, rule_w: QuadRule) -> complex:
    """Integrate ``f(z, w)`` over a product region; ``f`` must broadcast."""
    pz, wz = rule_z.nodes()
    pw, ww = rule_w.nodes()
    vals = np.asarray(f(pz[:, None], pw[None, :]), dtype=np.complex128)
    return complex(np.einsum("i,j,ij->", wz, ww, vals))


# -- norm balance for boundary-vanishing functions --------------------------


def derivative_norm_balance(gamma: Symbol, radius: Fraction | float = 1) -> tuple[PiScalar, PiScalar]:
    """Exact squared norms of the two Wirtinger derivatives of ``gamma``.

    ``gamma`` must be a one-variable symbol (z and conj z only) vanishing
    identically on the circle ``|z| = radius``; for such functions the two
    squared norms over the disk agree.  Returns the pair so callers can
    assert the balance.
    """
    if any(c or d for (_, _, c, d) in gamma.terms):
        raise ValueError("norm balance applies to one-variable symbols")
    r = _to_fraction(radius)
    if not circle_residual(gamma, "z", r).is_zero:
        raise ValueError(f"symbol does not vanish on the circle |z| = {r}")
    dom = ProductDomain(r, Fraction(1))
    # One-variable symbols: the w-coordinate contributes moment(0,0) = pi r2^2
    # with r2 = 1; divide it back out.
    unit_w = moment(0, 0, Fraction(1))
    lhs = inner_product(gamma.dz(), gamma.dz(), dom) / unit_w
    rhs = inner_product(gamma.dzbar(), gamma.dzbar(), dom) / unit_w
    return lhs, rhs
