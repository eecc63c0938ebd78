"""Two-sided essential-norm bounds over families of boundary disk slices.

The lower bounds maximize, over affine slices through the distinguished
boundary, the squared derivative at the slice center times the infimum of
the restricted conjugate-derivative modulus; the upper bound takes the
supremum of that modulus over the closed slice images.  Phases of the slice
scale are redundant (rotating the disk parameter absorbs them), so the
searches run over real positive scales.

Grid scans run on the compiled core from :mod:`essnorm.scan` when available;
winners are refined locally and the inner extremum of the reported slice is
converged by pattern search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import e as _e, pi, sqrt

import numpy as np

from . import scan
from .domain import ProductDomain, UNIT_BIDISK
from .symbols import DiskSlice, HarmonicityReport, Symbol, check_admissible, restrict

SQRT2 = sqrt(2.0)
SQRT_E = sqrt(_e)


class NotAdmissibleError(ValueError):
    """Raised when a symbol fails the mixed-derivative boundary check."""

    def __init__(self, report: HarmonicityReport):
        self.report = report
        families = ", ".join(fam for fam, _ in report.witnesses)
        super().__init__(f"symbol is not admissible (failing families: {families})")


@dataclass(frozen=True)
class SearchConfig:
    """Grid sizes and refinement depth for the slice searches."""

    grid_theta: int = 64
    grid_center: int = 33
    grid_scale: int = 32
    grid_inner: tuple[int, int] = (64, 16)
    refine_rounds: int = 3
    refine_points: int = 5
    polish_rounds: int = 20

    def __post_init__(self) -> None:
        if min(self.grid_theta, self.grid_center, self.grid_scale) < 1:
            raise ValueError("grid sizes must be positive")
        if min(self.grid_inner) < 1:
            raise ValueError("inner grid must be positive")


@dataclass(frozen=True)
class DiskFamily:
    """Families of affine boundary slices to search over.

    ``families`` lists the varying coordinates ("z", "w"); an empty tuple is
    the degenerate family whose bounds are identically zero.
    """

    domain: ProductDomain = field(default_factory=ProductDomain)
    families: tuple[str, ...] = ("z", "w")
    config: SearchConfig = field(default_factory=SearchConfig)

    def __post_init__(self) -> None:
        if any(f not in ("z", "w") for f in self.families):
            raise ValueError("families must be drawn from 'z', 'w'")


@dataclass(frozen=True)
class NeumannConstants:
    """Solution-operator bounds entering the upper-bound constant."""

    diameter: float
    solution_norm: float
    dbar_norm: float
    dbar_star_norm: float

    def to_json_dict(self) -> dict:
        return {
            "diameter": self.diameter,
            "solution_operator": self.solution_norm,
            "dbar_gradient": self.dbar_norm,
            "dbar_star_gradient": self.dbar_star_norm,
        }


def neumann_constants(dom: ProductDomain | None = None) -> NeumannConstants:
    """Diameter-based constants: e*tau**2 for the solution operator and
    sqrt(e)*tau for both derivative compositions."""
    dom = dom or UNIT_BIDISK
    tau = dom.diameter
    return NeumannConstants(tau, _e * tau * tau, SQRT_E * tau, SQRT_E * tau)


# -- grids -------------------------------------------------------------------


def _unit_grid(n_ang: int, n_rad: int) -> np.ndarray:
    """Closed-unit-disk grid; the center comes first (scan prune contract)."""
    pts = [0j]
    levels = np.linspace(0.0, 1.0, n_rad)[1:] if n_rad > 1 else np.array([1.0])
    phases = np.exp(2j * pi * np.arange(n_ang) / n_ang)
    for lev in levels:
        pts.extend((lev * phases).tolist())
    return np.asarray(pts, dtype=np.complex128)


def _candidates(r: float, cfg: SearchConfig) -> tuple[np.ndarray, np.ndarray]:
    """Flattened (center, scale) pairs with |center| + scale <= r."""
    n = cfg.grid_center
    radii = np.linspace(0.0, r, n)
    phases = np.exp(2j * pi * np.arange(n) / n)
    centers_list = [0j]
    for rho in radii[1:]:
        centers_list.extend((rho * phases).tolist())
    centers, scales = [], []
    for a in centers_list:
        room = r - abs(a)
        if room <= 0:
            continue
        for l in range(1, cfg.grid_scale + 1):
            centers.append(a)
            scales.append(room * l / cfg.grid_scale)
    return (
        np.asarray(centers, dtype=np.complex128),
        np.asarray(scales, dtype=np.float64),
    )


def _collapse(deriv: Symbol, family: str, dom: ProductDomain, theta: float) -> dict[tuple[int, int], complex]:
    """Coefficients of the derivative on the slice's fixed boundary circle,
    as a polynomial in the varying coordinate and its conjugate."""
    rfix = float(dom.r2 if family == "z" else dom.r1)
    w0 = rfix * complex(np.cos(theta), np.sin(theta))
    bucket: dict[tuple[int, int], complex] = {}
    for (a, b, c, d), coeff in deriv.terms.items():
        if family == "z":
            key, fac = (a, b), w0**c * w0.conjugate() ** d
        else:
            key, fac = (c, d), w0**a * w0.conjugate() ** b
        bucket[key] = bucket.get(key, 0j) + complex(coeff) * fac
    return bucket


def _refine_extremum(value_at, start: complex, radius: float, h0: float, rounds: int, minimize: bool):
    """Pattern search for an extremum of ``value_at`` over a closed disk.

    Scans shrinking 5x5 local squares (clamped into the disk) around the
    incumbent; deterministic and derivative-free.
    """
    best_pt = start
    best_val = value_at(start)
    better = (lambda a, b: a < b) if minimize else (lambda a, b: a > b)
    h = h0
    offs = np.linspace(-1.0, 1.0, 5)
    for _ in range(rounds):
        for dx in offs:
            for dy in offs:
                pt = best_pt + complex(dx * h, dy * h)
                mag = abs(pt)
                if mag > radius:
                    pt = pt / mag * radius
                val = value_at(pt)
                if better(val, best_val):
                    best_val, best_pt = val, pt
        h /= 3.0
    return best_val, best_pt


# -- maximin search -----------------------------------------------------------


def _maximin_raw(phi: Symbol, fam: DiskFamily) -> tuple[float, DiskSlice | None, dict]:
    """Maximize scale**2 * inf over the slice of |conjugate derivative|.

    Returns the raw value (callers attach their constants), the winning
    slice, and search diagnostics.
    """
    cfg = fam.config
    dom = fam.domain
    unit = _unit_grid(*cfg.grid_inner)
    thetas = 2.0 * pi * np.arange(cfg.grid_theta) / cfg.grid_theta

    best = 0.0
    state: tuple[str, float, complex, float] | None = None
    for family in fam.families:
        deriv = phi.dbar(family)
        if deriv.is_zero:
            continue
        r = float(dom.radius(family))
        centers, scales = _candidates(r, cfg)
        for theta in thetas:
            coeffs, za, zb = scan.poly_arrays(_collapse(deriv, family, dom, theta))
            v, idx, _ = scan.subdisk_maximin(coeffs, za, zb, centers, scales, unit, 1.0, best)
            if idx >= 0:
                best = v
                state = (family, float(theta), complex(centers[idx]), float(scales[idx]))

    diag = {"backend": scan.BACKEND, "theta_grid": cfg.grid_theta}
    if state is None:
        return 0.0, None, diag

    family, theta, center, scale_v = state
    r = float(dom.radius(family))
    deriv = phi.dbar(family)
    h_theta = 2.0 * pi / cfg.grid_theta
    h_center = r / max(cfg.grid_center - 1, 1)
    h_scale = r / cfg.grid_scale
    npts = cfg.refine_points
    for _ in range(cfg.refine_rounds):
        h_theta /= 4.0
        h_center /= 4.0
        h_scale /= 4.0
        cand_centers, cand_scales = [], []
        for da in np.linspace(-h_center, h_center, npts):
            for db in np.linspace(-h_center, h_center, npts):
                a = center + complex(da, db)
                if abs(a) >= r:
                    continue
                for ds in np.linspace(-h_scale, h_scale, npts):
                    s = min(scale_v + ds, r - abs(a))
                    if s > 0:
                        cand_centers.append(a)
                        cand_scales.append(s)
        if not cand_centers:
            continue
        ac = np.asarray(cand_centers, dtype=np.complex128)
        sc = np.asarray(cand_scales, dtype=np.float64)
        for t in np.linspace(theta - h_theta, theta + h_theta, npts):
            coeffs, za, zb = scan.poly_arrays(_collapse(deriv, family, dom, float(t)))
            v, idx, _ = scan.subdisk_maximin(coeffs, za, zb, ac, sc, unit, 1.0, best)
            if idx >= 0:
                best = v
                theta, center, scale_v = float(t), complex(ac[idx]), float(sc[idx])

    # Converge the winning slice's inner infimum.
    coeffs, za, zb = scan.poly_arrays(_collapse(deriv, family, dom, theta))

    def inner_value(xi: complex) -> float:
        pt = np.array([center + scale_v * xi], dtype=np.complex128)
        return scan.min_abs_on_points(coeffs, za, zb, pt)

    grid_vals = np.abs(_poly_on(coeffs, za, zb, center + scale_v * unit))
    xi0 = complex(unit[int(np.argmin(grid_vals))])
    inf_val, _ = _refine_extremum(
        inner_value, xi0, 1.0, 2.0 / max(cfg.grid_inner[1] - 1, 1), cfg.polish_rounds, True
    )
    inf_val = min(inf_val, float(grid_vals.min()))
    raw = scale_v * scale_v * inf_val
    slc = DiskSlice(family, theta, center, complex(scale_v), dom)
    diag["inner_inf"] = inf_val
    return raw, slc, diag


def _poly_on(coeffs, za, zb, pts: np.ndarray) -> np.ndarray:
    acc = np.zeros(pts.shape, dtype=np.complex128)
    pc = np.conjugate(pts)
    for t in range(len(coeffs)):
        acc += coeffs[t] * pts ** int(za[t]) * pc ** int(zb[t])
    return acc


def _sup_raw(phi: Symbol, fam: DiskFamily) -> tuple[float, dict | None, dict]:
    """Supremum of the conjugate-derivative modulus over the closed slice
    images (varying coordinate in its closed disk, other on its circle)."""
    cfg = fam.config
    dom = fam.domain
    best = 0.0
    state: tuple[str, float, complex] | None = None
    thetas = 2.0 * pi * np.arange(cfg.grid_theta) / cfg.grid_theta
    for family in fam.families:
        deriv = phi.dbar(family)
        if deriv.is_zero:
            continue
        r = float(dom.radius(family))
        pts = r * _unit_grid(*cfg.grid_inner)
        for theta in thetas:
            coeffs, za, zb = scan.poly_arrays(_collapse(deriv, family, dom, theta))
            v, idx = scan.max_abs_on_points(coeffs, za, zb, pts)
            if v > best:
                best = v
                state = (family, float(theta), complex(pts[idx]))

    diag = {"backend": scan.BACKEND, "theta_grid": cfg.grid_theta}
    if state is None:
        return 0.0, None, diag

    family, theta, point = state
    r = float(dom.radius(family))
    deriv = phi.dbar(family)
    h_theta = 2.0 * pi / cfg.grid_theta

    def value_at_theta(t: float, pt: complex) -> float:
        coeffs, za, zb = scan.poly_arrays(_collapse(deriv, family, dom, t))
        return float(np.abs(_poly_on(coeffs, za, zb, np.array([pt], dtype=np.complex128)))[0])

    h_pt = r / max(cfg.grid_inner[1] - 1, 1)
    for _ in range(cfg.polish_rounds):
        for t in np.linspace(theta - h_theta, theta + h_theta, 5):
            coeffs, za, zb = scan.poly_arrays(_collapse(deriv, family, dom, float(t)))
            for dx in np.linspace(-h_pt, h_pt, 5):
                for dy in np.linspace(-h_pt, h_pt, 5):
                    pt = point + complex(dx, dy)
                    mag = abs(pt)
                    if mag > r:
                        pt = pt / mag * r
                    v = float(np.abs(_poly_on(coeffs, za, zb, np.array([pt])))[0])
                    if v > best:
                        best, theta, point = v, float(t), pt
        h_theta /= 3.0
        h_pt /= 3.0

    argmax = {"family": family, "boundary_angle": theta, "point": point}
    return best, argmax, diag


# -- public bounds -------------------------------------------------------------


def _gate(phi: Symbol, dom: ProductDomain) -> None:
    report = check_admissible(phi, dom)
    if not report.admissible:
        raise NotAdmissibleError(report)


def lower_bound(phi: Symbol, fam: DiskFamily | None = None) -> tuple[float, DiskSlice | None]:
    """General product-domain lower bound: raw maximin over the slice
    families divided by sqrt(2) times the domain diameter."""
    fam = fam or DiskFamily()
    _gate(phi, fam.domain)
    raw, slc, _ = _maximin_raw(phi, fam)
    return raw / (SQRT2 * fam.domain.diameter), slc


def bidisk_lower(phi: Symbol, fam: DiskFamily | None = None) -> tuple[float, DiskSlice | None]:
    """Sharper unit-bidisk lower bound (raw maximin divided by sqrt(2))."""
    fam = fam or DiskFamily()
    if not fam.domain.is_unit_bidisk:
        raise ValueError("the sharper lower bound requires the unit bidisk")
    _gate(phi, fam.domain)
    raw, slc, _ = _maximin_raw(phi, fam)
    return raw / SQRT2, slc


def upper_bound(phi: Symbol, fam: DiskFamily | None = None) -> tuple[float, dict | None]:
    """Upper bound: sqrt(e) * diameter * sup of the conjugate-derivative
    modulus over the closed slice images."""
    fam = fam or DiskFamily()
    _gate(phi, fam.domain)
    raw, argmax, _ = _sup_raw(phi, fam)
    return SQRT_E * fam.domain.diameter * raw, argmax


@dataclass(frozen=True)
class BoundReport:
    """All slice-family bounds for one symbol."""

    lower: float
    upper: float
    bidisk_lower: float | None
    argmax_lower: DiskSlice | None
    argmax_upper: dict | None
    diagnostics: dict

    def to_json_dict(self) -> dict:
        upper_arg = None
        if self.argmax_upper is not None:
            pt = self.argmax_upper["point"]
            upper_arg = dict(self.argmax_upper, point=[pt.real, pt.imag])
        return {
            "lower": self.lower,
            "upper": self.upper,
            "bidisk_lower": self.bidisk_lower,
            "argmax_lower": None if self.argmax_lower is None else self.argmax_lower.to_json_dict(),
            "argmax_upper": upper_arg,
        }


def evaluate_bounds(phi: Symbol, fam: DiskFamily | None = None) -> BoundReport:
    """Run both searches once and package every bound."""
    fam = fam or DiskFamily()
    _gate(phi, fam.domain)
    raw, slc, diag_low = _maximin_raw(phi, fam)
    sup, argmax_up, diag_up = _sup_raw(phi, fam)
    tau = fam.domain.diameter
    return BoundReport(
        lower=raw / (SQRT2 * tau),
        upper=SQRT_E * tau * sup,
        bidisk_lower=raw / SQRT2 if fam.domain.is_unit_bidisk else None,
        argmax_lower=slc,
        argmax_upper=argmax_up,
        diagnostics={"maximin": diag_low, "sup": diag_up},
    )


# -- slice area identity --------------------------------------------------------


def area_form_identity(phi: Symbol, slc: DiskSlice, rounds: int = 24) -> tuple[float, float]:
    """Evaluate both sides of the slice area identity.

    Left: area of the slice image times the infimum over it of the
    conjugate-derivative modulus.  Right: pi times |F'(0)| times the infimum
    over the unit disk of the restricted derivative's modulus.  The two
    agree because the affine map rescales area by |F'(0)|**2 and
    |(phi o F)_xi-bar| = |F'(0)| |phi_..-bar o F|.  Routes are independent:
    the left side scans the image disk directly, the right side evaluates
    the exact restriction.
    """
    dom = slc.domain
    deriv = phi.dbar(slc.family)
    coeffs, za, zb = scan.poly_arrays(_collapse(deriv, slc.family, dom, slc.boundary_angle))
    c_abs = abs(slc.scale)

    # Left: polar grid directly on the image disk (offset angles decorrelate
    # it from the right side's grid).
    radii = np.linspace(0.0, c_abs, 24)[1:]
    angles = 2.0 * pi * (np.arange(48) + 0.37) / 48
    pts = [slc.center] + [
        slc.center + complex(rho * np.cos(t), rho * np.sin(t)) for rho in radii for t in angles
    ]
    pts = np.asarray(pts, dtype=np.complex128)
    vals = np.abs(_poly_on(coeffs, za, zb, pts))
    i0 = int(np.argmin(vals))

    def left_value(zeta: complex) -> float:
        rel = zeta - slc.center
        mag = abs(rel)
        if mag > c_abs:
            zeta = slc.center + rel / mag * c_abs
        return float(np.abs(_poly_on(coeffs, za, zb, np.array([zeta], dtype=np.complex128)))[0])

    # Pattern-search region is the image disk; emulate by recentring.
    def left_shifted(xi: complex) -> float:
        return left_value(slc.center + xi)

    inf_left, _ = _refine_extremum(
        left_shifted, complex(pts[i0] - slc.center), c_abs, c_abs / 8.0, rounds, True
    )
    inf_left = min(inf_left, float(vals[i0]))
    left = pi * c_abs * c_abs * inf_left

    # Right: exact restriction evaluated on its own unit-disk grid.
    comp_dbar = restrict(phi, slc).composed_dbar

    def right_value(xi: complex) -> float:
        mag = abs(xi)
        if mag > 1.0:
            xi = xi / mag
        return abs(comp_dbar.eval(xi, slc.boundary_angle))

    unit = _unit_grid(40, 12)
    rvals = np.array([right_value(p) for p in unit])
    j0 = int(np.argmin(rvals))
    inf_right, _ = _refine_extremum(right_value, complex(unit[j0]), 1.0, 0.25, rounds, True)
    inf_right = min(inf_right, float(rvals[j0]))
    right = pi * c_abs * inf_right
    return left, right


# -- bracket consistency ---------------------------------------------------------


@dataclass(frozen=True)
class SandwichReport:
    """Ordered-chain check between slice bounds and a truncation bracket."""

    checks: tuple[tuple[str, float, float, bool], ...]
    passed: bool
    values: dict

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": name, "lhs": lhs, "rhs": rhs, "ok": ok}
                for name, lhs, rhs, ok in self.checks
            ],
            "values": self.values,
        }


def sandwich_check(bounds: BoundReport, bracket, tol_lower: float = 1e-6, tol_upper: float = 1e-6) -> SandwichReport:
    """Verify lower bounds <= bracket <= upper bound (with tolerances)."""
    checks = []
    mid_lower = bounds.lower
    if bounds.bidisk_lower is not None:
        checks.append(
            ("general_le_bidisk", bounds.lower, bounds.bidisk_lower, bounds.lower <= bounds.bidisk_lower + 1e-12)
        )
        mid_lower = bounds.bidisk_lower
    checks.append(
        ("lower_le_bracket", mid_lower, bracket.lower_est, mid_lower <= bracket.lower_est + tol_lower)
    )
    checks.append(
        (
            "bracket_consistent",
            bracket.lower_est,
            bracket.upper_est,
            bracket.lower_est <= bracket.upper_est + tol_lower,
        )
    )
    checks.append(
        ("bracket_le_upper", bracket.upper_est, bounds.upper, bracket.upper_est <= bounds.upper + tol_upper)
    )
    values = {
        "lower": bounds.lower,
        "bidisk_lower": bounds.bidisk_lower,
        "bracket_lower": bracket.lower_est,
        "bracket_upper": bracket.upper_est,
        "upper": bounds.upper,
    }
    return SandwichReport(tuple(checks), all(ok for *_, ok in checks), values)
