"""Closed-form verification battery.

Each row recomputes a quantity with a known closed form through the
package's numeric machinery (quadrature rules, exact norm balance, Gram
spectra, slice searches) and reports the discrepancy.  A synthetic negative
control confirms the battery actually detects a broken value.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt

import numpy as np

from .bergman import QuadRule, derivative_norm_balance, quad_integrate
from .bounds import area_form_identity
from .domain import UNIT_BIDISK
from .hankel import BasisWindow, Rotate, Swap, compose_unitary, gram
from .symbols import DiskSlice, Symbol

TOL = 1e-8


@dataclass(frozen=True)
class VerificationRow:
    name: str
    closed_form: float
    computed: float
    abs_error: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "closed_form": self.closed_form,
            "computed": self.computed,
            "abs_error": self.abs_error,
            "passed": self.passed,
        }


def _row(name: str, closed: float, computed: float, tol: float = TOL) -> VerificationRow:
    err = abs(computed - closed)
    return VerificationRow(name, closed, computed, err, err <= tol * max(1.0, abs(closed)))


def _bump_rows(tau0: float, n_radial: int, n_angular: int, amplitude_shift: float = 0.0) -> list[VerificationRow]:
    """Normalized quadratic bump on a disk of radius tau0.

    chi(z) = (2 / (pi tau0**2)) (1 - |z|**2 / tau0**2): unit mass, gradient
    norm 2 / (pi tau0**4), and mass / gradient-norm ratio tau0**2 sqrt(pi/2).
    """
    amp = 2.0 / (pi * tau0**2) + amplitude_shift
    rule = QuadRule(region="disk", radius=tau0, n_radial=n_radial, n_angular=n_angular)

    mass = quad_integrate(lambda p: amp * (1.0 - np.abs(p) ** 2 / tau0**2), rule).real
    grad_sq = quad_integrate(
        lambda p: (amp / tau0**2) ** 2 * np.abs(p) ** 2, rule
    ).real
    prefix = "control_" if amplitude_shift else ""
    rows = [
        _row(prefix + "bump_mass", 1.0, mass),
        _row(prefix + "bump_gradient_sq", 2.0 / (pi * tau0**4), grad_sq),
        _row(prefix + "bump_ratio", tau0**2 * sqrt(pi / 2.0), mass / sqrt(grad_sq)),
    ]
    return rows


def _probe_rows(r0: float, eps1: float, j_values, n_radial: int, n_angular: int) -> list[VerificationRow]:
    """Fractional-power probes on a wedge of opening pi - eps1.

    The j-th probe is w**(-alpha_j) / 2**j with alpha_j = 1 - 2**(-2j-1);
    its squared norm over the wedge of radius r0 collapses to
    (pi - eps1) * r0**(2**(-2j)).
    """
    if not 0 < eps1 < pi:
        raise ValueError("wedge opening requires 0 < eps1 < pi")
    if any(j > 4 for j in j_values):
        # r**(-2*alpha_j) at the innermost node leaves double range past j = 4
        raise ValueError("probe exponents overflow double precision for j > 4")
    half = (pi - eps1) / 2.0
    rows = []
    for j in j_values:
        alpha = 1.0 - 0.5 ** (2 * j + 1)
        s = 2.0 - 2.0 * alpha
        # The substituted radial integrand is constant, so any node count is
        # exact; cap it so u**(2/s-1) stays inside double range (the smallest
        # Gauss-Legendre node on (0,1) is > 1/(n+1)**2).
        n_safe = max(1, min(n_radial, int(10.0 ** (145.0 * s / (2.0 - s))) - 1))
        rule = QuadRule(
            region="wedge",
            radius=r0,
            n_radial=n_safe,
            n_angular=n_angular,
            radial_power=s,
            theta_lo=-half,
            theta_hi=half,
        )
        val = quad_integrate(lambda p: np.abs(p) ** (-2.0 * alpha) / 4.0**j, rule).real
        closed = (pi - eps1) * r0 ** (2.0 ** (-2 * j))
        rows.append(_row(f"probe_norm_sq_j{j}", closed, val))
    return rows


def _balance_rows() -> list[VerificationRow]:
    quartic = Symbol({(0, 0, 0, 0): 1, (1, 1, 0, 0): -2, (2, 2, 0, 0): 1})
    lhs, rhs = derivative_norm_balance(quartic, 1)
    rows = [
        _row("norm_balance_quartic", pi / 3.0, float(lhs)),
        _row("norm_balance_quartic_conj", float(lhs), float(rhs)),
    ]
    cubic = Symbol({(1, 0, 0, 0): 1, (2, 1, 0, 0): -2, (3, 2, 0, 0): 1})
    lhs2, rhs2 = derivative_norm_balance(cubic, 1)
    rows.append(_row("norm_balance_weighted", float(lhs2), float(rhs2)))
    return rows


def _spectrum_rows(degree: int) -> list[VerificationRow]:
    phi = Symbol({(0, 1, 0, 0): 1, (0, 1, 0, 1): 1, (0, 0, 0, 2): complex(0.5, 0.5)})
    window = BasisWindow.graded(degree)
    base = np.sort(gram(phi, window, mode="float").eigenvalues())
    rows = []
    for name, transform in (
        ("spectrum_rotation", Rotate(pi / 3, 1.1)),
        ("spectrum_swap", Swap()),
    ):
        moved = compose_unitary(phi, transform, UNIT_BIDISK)
        eig = np.sort(gram(moved, window, mode="float").eigenvalues())
        rows.append(_row(name, 0.0, float(np.max(np.abs(eig - base)))))
    return rows


def _area_rows() -> list[VerificationRow]:
    phi = Symbol({(0, 1, 0, 0): 1})
    slc = DiskSlice("z", 0.0, 0j, 0.5 + 0j, UNIT_BIDISK)
    left, right = area_form_identity(phi, slc)
    return [
        _row("area_identity_direct", pi / 4.0, left),
        _row("area_identity_pullback", pi / 4.0, right),
    ]


def run_verification(
    tau0: float = 1.0,
    r0: float = 0.5,
    eps1: float = 0.1,
    j_values: tuple[int, ...] = (1, 2, 3),
    n_radial: int = 32,
    n_angular: int = 64,
    spectrum_degree: int = 6,
) -> list[VerificationRow]:
    """Run the full battery; every row must pass for a healthy build.

    The final row is a negative control: the bump amplitude is perturbed by
    1e-3 and the row passes exactly when the battery flags the perturbation.
    """
    if tau0 <= 0 or r0 <= 0:
        raise ValueError("bump and wedge radii must be positive")
    rows: list[VerificationRow] = []
    rows += _bump_rows(tau0, n_radial, n_angular)
    rows += _probe_rows(r0, eps1, j_values, n_radial, n_angular)
    rows += _balance_rows()
    rows += _spectrum_rows(spectrum_degree)
    rows += _area_rows()

    control = _bump_rows(tau0, n_radial, n_angular, amplitude_shift=1e-3)
    detected = not all(r.passed for r in control)
    rows.append(
        VerificationRow("negative_control", 1.0, 1.0 if detected else 0.0, 0.0 if detected else 1.0, detected)
    )
    return rows
