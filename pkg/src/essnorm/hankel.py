"""Truncated Hankel forms, operator norms, and essential-norm brackets.

For a polynomial symbol phi the Hankel operator sends a holomorphic f to the
non-holomorphic part of phi * f.  On a monomial basis window the squared
singular values are eigenvalues of the Gram matrix

    G[i, j] = < H e_j, H e_i >,

which this module assembles along two independent routes: an exact one,
where entries factor as sqrt(weight_i * weight_j) times a rational Hermitian
matrix (weights (m+1)(n+1) come from the basis normalization), and a plain
floating-point one used both as a cross-check and for large windows.
Essential-norm brackets combine tail-window norms with Rayleigh quotients
along normalized-kernel test vectors concentrating at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import cos, pi, sin, sqrt

import numpy as np

from .domain import ProductDomain, UNIT_BIDISK
from .exact import ExactComplex, SqrtScaled
from .bergman import BasisIndex, inner_product, normalized_kernel_coeffs, project
from .symbols import Symbol

Key = tuple[int, int, int, int]


# -- basis windows ----------------------------------------------------------


@dataclass(frozen=True)
class BasisWindow:
    """Ordered set of basis bidegrees (graded order: by total degree, then m)."""

    indices: tuple[BasisIndex, ...]

    @staticmethod
    def graded(max_degree: int, min_degree: int = 0) -> "BasisWindow":
        """All (m, n) with min_degree <= m + n <= max_degree."""
        idx = [
            BasisIndex(m, d - m)
            for d in range(min_degree, max_degree + 1)
            for m in range(d + 1)
        ]
        return BasisWindow(tuple(idx))

    @staticmethod
    def tail(start: int, max_degree: int) -> "BasisWindow":
        """Degrees strictly above ``start`` and at most ``max_degree``."""
        if start >= max_degree:
            raise ValueError("tail start must be below the truncation degree")
        return BasisWindow.graded(max_degree, start + 1)

    @staticmethod
    def rect(max_m: int, max_n: int) -> "BasisWindow":
        idx = sorted(
            (BasisIndex(m, n) for m in range(max_m + 1) for n in range(max_n + 1)),
            key=lambda t: (t.m + t.n, t.m),
        )
        return BasisWindow(tuple(idx))

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def positions(self) -> dict[BasisIndex, int]:
        return {idx: i for i, idx in enumerate(self.indices)}

    def degrees(self) -> np.ndarray:
        return np.array([i.degree for i in self.indices], dtype=np.int64)


# -- projection coefficients -------------------------------------------------


def _sqrt_fraction(fr: Fraction) -> SqrtScaled:
    # sqrt(p/q) = sqrt(p*q) / q, exactly
    return SqrtScaled(Fraction(1, fr.denominator), fr.numerator * fr.denominator)


def _mono_norm_sq_rat(idx: BasisIndex, dom: ProductDomain) -> Fraction:
    """Rational part B with ||z^m w^n||^2 = pi^2 * B."""
    return Fraction(
        dom.r1 ** (2 * idx.m + 2) * dom.r2 ** (2 * idx.n + 2), idx.weight
    )


def projection_coeffs(phi: Symbol, idx: BasisIndex, dom: ProductDomain | None = None) -> dict[BasisIndex, SqrtScaled]:
    """Exact coefficients of the holomorphic projection of phi * e_idx.

    Keys are the basis bidegrees receiving mass; values are exact
    coefficients (rational times a square root of an integer).
    """
    dom = dom or UNIT_BIDISK
    q = phi * Symbol.monomial((idx.m, 0, idx.n, 0))
    proj = project(q, dom)
    b_idx = _mono_norm_sq_rat(idx, dom)
    out: dict[BasisIndex, SqrtScaled] = {}
    for (k, _zb, l, _wb), coeff in proj.sorted_terms():
        target = BasisIndex(k, l)
        ratio = _mono_norm_sq_rat(target, dom) / b_idx
        val = _sqrt_fraction(ratio) * coeff
        if not val.is_zero:
            out[target] = val
    return out


# -- Gram assembly -----------------------------------------------------------


def _charge_diffs(phi: Symbol) -> set[tuple[int, int]]:
    """Index offsets (dm, dn) at which Gram entries can be nonzero."""
    charges = {(a - b, c - d) for (a, b, c, d) in phi.terms}
    return {(q1[0] - q2[0], q1[1] - q2[1]) for q1 in charges for q2 in charges}


def _residual(phi: Symbol, idx: BasisIndex, dom: ProductDomain) -> Symbol:
    q = phi * Symbol.monomial((idx.m, 0, idx.n, 0))
    return q - project(q, dom)


@dataclass(frozen=True)
class HermitianGram:
    """Gram matrix of Hankel images of a basis window.

    ``matrix`` always holds floating entries.  When assembled exactly,
    ``rational`` holds the Hermitian rational factor R with
    ``G = diag(sqrt(weights)) R diag(sqrt(weights))``.
    """

    window: BasisWindow
    weights: np.ndarray
    matrix: np.ndarray
    rational: tuple[tuple[ExactComplex, ...], ...] | None
    exact: bool

    def eigenvalues(self) -> np.ndarray:
        if len(self.window) == 0:
            return np.zeros(0)
        return np.linalg.eigvalsh(self.matrix)

    def op_norm(self) -> float:
        eig = self.eigenvalues()
        if eig.size == 0:
            return 0.0
        return sqrt(max(float(eig[-1]), 0.0))

    def diag_exact(self) -> list[Fraction]:
        if self.rational is None:
            raise ValueError("Gram was not assembled exactly")
        out = []
        for i in range(len(self.window)):
            entry = self.rational[i][i]
            if entry.im:
                raise ValueError("diagonal of a Hermitian form must be real")
            out.append(entry.re * self.weights[i])
        return out

    def entry_exact(self, i: int, j: int) -> SqrtScaled:
        if self.rational is None:
            raise ValueError("Gram was not assembled exactly")
        return SqrtScaled(1, int(self.weights[i] * self.weights[j])) * self.rational[i][j]


def gram(
    phi: Symbol,
    window: BasisWindow,
    dom: ProductDomain | None = None,
    mode: str = "auto",
    exact_budget: int = 20000,
) -> HermitianGram:
    """Assemble the Hankel Gram matrix on a basis window.

    ``mode`` is ``"exact"``, ``"float"``, or ``"auto"`` (exact when the
    symbol has exact coefficients and the estimated entry count fits the
    budget).  The two modes are independent implementations.
    """
    dom = dom or UNIT_BIDISK
    if mode not in ("auto", "exact", "float"):
        raise ValueError(f"unknown gram mode {mode!r}")
    diffs = _charge_diffs(phi)
    if mode == "auto":
        mode = "exact" if phi.exact and len(window) * len(diffs) <= exact_budget else "float"
    if mode == "exact":
        return _gram_exact(phi, window, dom, diffs)
    return _gram_float(phi, window, dom, diffs)


def _gram_exact(phi: Symbol, window: BasisWindow, dom: ProductDomain, diffs) -> HermitianGram:
    n = len(window)
    pos = window.positions()
    weights = np.array([idx.weight for idx in window.indices], dtype=np.int64)
    residuals = [_residual(phi, idx, dom) for idx in window.indices]
    rational: list[list[ExactComplex]] = [[ExactComplex(0)] * n for _ in range(n)]
    matrix = np.zeros((n, n), dtype=np.complex128)
    zero = ExactComplex(0)
    for i, idx_i in enumerate(window.indices):
        for dm, dn in diffs:
            mj, nj = idx_i.m - dm, idx_i.n - dn
            if mj < 0 or nj < 0:
                continue
            j = pos.get(BasisIndex(mj, nj))
            if j is None or j < i:
                continue
            val = inner_product(residuals[j], residuals[i], dom)
            if val.is_zero:
                rij = zero
            else:
                if val.power != 2:
                    raise AssertionError("product-domain inner product must carry pi^2")
                denom = dom.r1 ** (idx_i.m + mj + 2) * dom.r2 ** (idx_i.n + nj + 2)
                rij = val.coeff / denom
            rational[i][j] = rij
            rational[j][i] = rij.conjugate()
            scale = sqrt(float(weights[i]) * float(weights[j]))
            matrix[i, j] = scale * complex(rij)
            matrix[j, i] = matrix[i, j].conjugate()
    rows = tuple(tuple(row) for row in rational)
    return HermitianGram(window, weights, matrix, rows, True)


# Independent floating-point route: plain dict symbols with complex
# coefficients and float moments, sharing no code with the exact path.


def _fmoment(a: int, r: float) -> float:
    return pi * r ** (2 * a + 2) / (a + 1)


def _fsymbol(phi: Symbol) -> dict[Key, complex]:
    return {k: complex(v) for k, v in phi.terms.items()}


def _fresidual(fphi: dict[Key, complex], m: int, n: int, r1: float, r2: float) -> dict[Key, complex]:
    shifted: dict[Key, complex] = {}
    for (a, b, c, d), v in fphi.items():
        shifted[(a + m, b, c + n, d)] = shifted.get((a + m, b, c + n, d), 0j) + v
    out = dict(shifted)
    for (A, B, C, D), v in shifted.items():
        if A < B or C < D:
            continue
        k, l = A - B, C - D
        coeff = v * (k + 1) * (l + 1) / ((A + 1) * (C + 1)) * r1 ** (2 * B) * r2 ** (2 * D)
        key = (k, 0, l, 0)
        out[key] = out.get(key, 0j) - coeff
    return {k: v for k, v in out.items() if v != 0}


def _finner(f: dict[Key, complex], g: dict[Key, complex], r1: float, r2: float) -> complex:
    buckets: dict[tuple[int, int], list] = {}
    for key, val in g.items():
        a, b, c, d = key
        buckets.setdefault((a - b, c - d), []).append((key, val))
    total = 0j
    for (a1, b1, c1, d1), v1 in f.items():
        for (a2, b2, c2, d2), v2 in buckets.get((a1 - b1, c1 - d1), ()):
            if a1 + b2 == b1 + a2 and c1 + d2 == d1 + c2:
                total += v1 * v2.conjugate() * _fmoment(a1 + b2, r1) * _fmoment(c1 + d2, r2)
    return total


def _fnorm(idx: BasisIndex, r1: float, r2: float) -> float:
    return sqrt(_fmoment(idx.m, r1) * _fmoment(idx.n, r2))


def _gram_float(phi: Symbol, window: BasisWindow, dom: ProductDomain, diffs) -> HermitianGram:
    n = len(window)
    pos = window.positions()
    r1, r2 = float(dom.r1), float(dom.r2)
    weights = np.array([idx.weight for idx in window.indices], dtype=np.int64)
    fphi = _fsymbol(phi)
    residuals = [_fresidual(fphi, idx.m, idx.n, r1, r2) for idx in window.indices]
    norms = [_fnorm(idx, r1, r2) for idx in window.indices]
    matrix = np.zeros((n, n), dtype=np.complex128)
    for i, idx_i in enumerate(window.indices):
        for dm, dn in diffs:
            mj, nj = idx_i.m - dm, idx_i.n - dn
            if mj < 0 or nj < 0:
                continue
            j = pos.get(BasisIndex(mj, nj))
            if j is None or j < i:
                continue
            val = _finner(residuals[j], residuals[i], r1, r2) / (norms[i] * norms[j])
            matrix[i, j] = val
            matrix[j, i] = val.conjugate()
    return HermitianGram(window, weights, matrix, None, False)


def op_norm(phi: Symbol, max_degree: int, dom: ProductDomain | None = None, mode: str = "auto") -> float:
    """Norm of the Hankel operator truncated to total degree <= max_degree."""
    return gram(phi, BasisWindow.graded(max_degree), dom, mode).op_norm()


# -- exact spectral certificates ---------------------------------------------


def charpoly_exact(g: HermitianGram) -> list[Fraction]:
    """Exact characteristic polynomial coefficients of a small Gram matrix.

    Returns ``[c_0, ..., c_n]`` with ``det(x I - G) = sum c_k x**k``; the
    Gram must have been assembled exactly and have size at most 4.  Works on
    the rational matrix R * diag(weights), which is similar to G.
    """
    if g.rational is None:
        raise ValueError("charpoly requires an exactly assembled Gram")
    n = len(g.window)
    if n > 4:
        raise ValueError("exact characteristic polynomial supports windows up to size 4")
    # Entries of x*I - B as degree-<=1 polynomials [const, coeff of x].
    one, zero = ExactComplex(1), ExactComplex(0)
    mat = [
        [
            [-(g.rational[i][j] * int(g.weights[j])), one if i == j else zero]
            for j in range(n)
        ]
        for i in range(n)
    ]

    def pmul(p, q):
        out = [zero] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
        return out

    def padd(p, q):
        out = list(p) + [zero] * (len(q) - len(p))
        for i, b in enumerate(q):
            out[i] = out[i] + b
        return out

    def det(rows, cols):
        if len(cols) == 1:
            return mat[rows[0]][cols[0]]
        total = [zero]
        r = rows[0]
        for k, c in enumerate(cols):
            minor = det(rows[1:], cols[:k] + cols[k + 1 :])
            term = pmul(mat[r][c], minor)
            if k % 2:
                term = [-t for t in term]
            total = padd(total, term)
        return total

    if n == 0:
        return [Fraction(1)]
    poly = det(list(range(n)), list(range(n)))
    coeffs = []
    for c in poly:
        if c.im:
            raise AssertionError("characteristic polynomial of a Hermitian form is real")
        coeffs.append(c.re)
    return coeffs


def psd_exact(g: HermitianGram) -> bool:
    """Exact positive-semidefiniteness via pivoted Hermitian elimination."""
    if g.rational is None:
        raise ValueError("exact PSD check requires an exactly assembled Gram")
    n = len(g.window)
    a = {(i, j): g.rational[i][j] for i in range(n) for j in range(n)}
    active = list(range(n))
    while active:
        for i in active:
            if a[(i, i)].im:
                raise AssertionError("Hermitian form has complex diagonal")
        piv = max(active, key=lambda i: a[(i, i)].re)
        pv = a[(piv, piv)].re
        if pv < 0:
            return False
        if pv == 0:
            return all(a[(i, j)].is_zero for i in active for j in active)
        active.remove(piv)
        inv = a[(piv, piv)]
        for i in active:
            left = a[(i, piv)]
            if left.is_zero:
                continue
            for j in active:
                a[(i, j)] = a[(i, j)] - left * a[(piv, j)] / inv
    return True


# -- unitary symmetries -------------------------------------------------------


@dataclass(frozen=True)
class Rotate:
    """Coordinatewise rotation (z, w) -> (exp(i alpha) z, exp(i beta) w)."""

    alpha: float = 0.0
    beta: float = 0.0


@dataclass(frozen=True)
class Swap:
    """Coordinate swap (z, w) -> (w, z); requires equal radii."""


def _unit_factor(angle: float, charge: int) -> ExactComplex | None:
    """exp(i * angle * charge) as an exact value when it is a power of i."""
    if charge == 0:
        return ExactComplex(1)
    quarter = angle / (pi / 2)
    if quarter != round(quarter):
        return None
    k = (int(round(quarter)) * charge) % 4
    return (ExactComplex(1), ExactComplex(0, 1), ExactComplex(-1), ExactComplex(0, -1))[k]


def compose_unitary(phi: Symbol, transform: "Rotate | Swap", dom: ProductDomain | None = None) -> Symbol:
    """Pull a symbol back along a unitary self-map of the domain.

    Rotations are always available; the swap needs r1 == r2.  Hankel
    spectra on swap- and rotation-closed windows are invariant under these
    compositions.
    """
    dom = dom or UNIT_BIDISK
    if isinstance(transform, Swap):
        if dom.r1 != dom.r2:
            raise ValueError("coordinate swap requires equal radii")
        return Symbol(
            {(c, d, a, b): v for (a, b, c, d), v in phi.terms.items()}, phi.exact
        )
    if not isinstance(transform, Rotate):
        raise TypeError("transform must be Rotate or Swap")
    out: dict[Key, ExactComplex] = {}
    exact = phi.exact
    for (a, b, c, d), v in phi.terms.items():
        fz = _unit_factor(transform.alpha, a - b)
        fw = _unit_factor(transform.beta, c - d)
        if fz is None:
            th = transform.alpha * (a - b)
            fz = ExactComplex.from_number(complex(cos(th), sin(th)))
            exact = False
        if fw is None:
            th = transform.beta * (c - d)
            fw = ExactComplex.from_number(complex(cos(th), sin(th)))
            exact = False
        key = (a, b, c, d)
        contrib = v * fz * fw
        cur = out.get(key)
        out[key] = contrib if cur is None else cur + contrib
    return Symbol(out, exact)


# -- kernel test vectors -------------------------------------------------------


def _min_degree_for_tail(x: float, threshold: float, cap: int) -> int:
    """Smallest M with kernel truncation deficit <= threshold at |q|^2 = x."""
    if x == 0.0:
        return 0

    def tail(m: int) -> float:
        return (m + 2) * x ** (m + 1) - (m + 1) * x ** (m + 2)

    m = 4
    while tail(m) > threshold and m < cap:
        m *= 2
    if tail(m) > threshold:
        return cap
    lo, hi = 0, m
    while lo < hi:
        mid = (lo + hi) // 2
        if tail(mid) <= threshold:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _strips_float(
    phi: Symbol, dom: ProductDomain, family: str, g_range: int, M: int
) -> list[dict[int, np.ndarray]]:
    """Banded Gram strips for kernel Rayleigh quotients.

    For family "w", strip g holds the band S[n, n + off] = G[(g, n), (g, n + off)]
    for 0 <= n, n + off <= M and every allowed offset off >= 0; family "z"
    swaps the roles of the bidegrees.
    """
    r1, r2 = float(dom.r1), float(dom.r2)
    fphi = _fsymbol(phi)
    diffs = _charge_diffs(phi)
    if family == "w":
        offsets = sorted({dn for dm, dn in diffs if dm == 0 and dn >= 0})
    else:
        offsets = sorted({dm for dm, dn in diffs if dn == 0 and dm >= 0})
    strips: list[dict[int, np.ndarray]] = []
    for g in range(g_range + 1):
        if family == "w":
            idxs = [BasisIndex(g, t) for t in range(M + 1)]
        else:
            idxs = [BasisIndex(t, g) for t in range(M + 1)]
        residuals = [_fresidual(fphi, ix.m, ix.n, r1, r2) for ix in idxs]
        norms = [_fnorm(ix, r1, r2) for ix in idxs]
        band: dict[int, np.ndarray] = {}
        for off in offsets:
            vals = np.zeros(M + 1 - off, dtype=np.complex128)
            for t in range(M + 1 - off):
                vals[t] = _finner(residuals[t + off], residuals[t], r1, r2) / (
                    norms[t] * norms[t + off]
                )
            band[off] = vals
        strips.append(band)
    return strips


def kernel_rayleigh_sequence(
    phi: Symbol,
    dom: ProductDomain | None = None,
    family: str = "w",
    p_schedule: tuple[float, ...] = (0.0, 0.5, 0.9, 0.99),
    g_range: int = 12,
    tail_threshold: float = 1e-8,
    degree_cap: int = 6000,
) -> tuple[list[tuple[complex, float]], dict]:
    """Rayleigh quotients ||H(g x k_p)|| / ||g x k_p|| along kernel vectors.

    ``k_p`` is the truncated normalized kernel at ``p`` in the ``family``
    coordinate; ``g`` runs over the other coordinate's basis up to
    ``g_range``.  For each ``p`` the reported value is the best over ``g``
    (ties within 1e-12 resolve to the lexicographically first index).
    The truncation degree is chosen so the kernel deficit is below
    ``tail_threshold`` (capped at ``degree_cap``).
    """
    dom = dom or UNIT_BIDISK
    if family not in ("z", "w"):
        raise ValueError("family must be 'z' or 'w'")
    rvar = float(dom.r2 if family == "w" else dom.r1)
    xs = [abs(complex(p) / rvar) ** 2 for p in p_schedule]
    if any(x >= 1.0 for x in xs):
        raise ValueError("kernel points must lie inside the open disk")
    M = max((_min_degree_for_tail(x, tail_threshold, degree_cap) for x in xs), default=0)
    strips = _strips_float(phi, dom, family, g_range, M)
    points: list[tuple[complex, float]] = []
    chosen: list[int] = []
    worst_tail = 0.0
    for p in p_schedule:
        beta, tail = normalized_kernel_coeffs(p, M, rvar)
        worst_tail = max(worst_tail, tail)
        den = float(np.sum(np.abs(beta) ** 2))
        vals = []
        for band in strips:
            num = 0.0
            for off, arr in band.items():
                contrib = np.sum(np.conjugate(beta[: beta.size - off]) * arr * beta[off:])
                num += float(contrib.real) if off == 0 else 2.0 * float(contrib.real)
            vals.append(sqrt(max(num, 0.0) / den))
        best = max(vals)
        g_star = next(i for i, v in enumerate(vals) if v >= best - 1e-12)
        points.append((complex(p), best))
        chosen.append(g_star)
    diag = {
        "kernel_degree": M,
        "max_tail_deficit": worst_tail,
        "argmax_basis": chosen,
        "family": family,
    }
    return points, diag


# -- essential-norm bracket -----------------------------------------------------


@dataclass(frozen=True)
class EssNormBracket:
    """Two-sided essential-norm estimate from truncated data.

    ``table`` rows are ``(tail_start, degree, tail_norm)``; ``sequence``
    rows are ``(p, Rayleigh value)`` merged over the kernel families.  The
    upper estimate extrapolates the squared tail norms linearly in
    ``1 / (degree + 2)``; the lower estimate is the best of the raw tail
    norm, the kernel values, and that same extrapolation.
    """

    lower_est: float
    upper_est: float
    table: tuple[tuple[int, int, float], ...]
    sequence: tuple[tuple[complex, float], ...]
    diagnostics: dict

    def to_json_dict(self) -> dict:
        return {
            "lower_est": self.lower_est,
            "upper_est": self.upper_est,
            "table": [[k, n, v] for k, n, v in self.table],
            "sequence": [
                [p.real if p.imag == 0 else [p.real, p.imag], v] for p, v in self.sequence
            ],
        }


def ess_norm_bracket(
    phi: Symbol,
    dom: ProductDomain | None = None,
    max_degree: int = 30,
    tail_starts: tuple[int, ...] = (10, 15, 20),
    n_schedule: tuple[int, ...] | None = None,
    p_schedule: tuple[float, ...] = (0.0, 0.5, 0.9, 0.99),
    families: tuple[str, ...] = ("z", "w"),
    kernel_g_range: int | None = None,
    tail_threshold: float = 1e-8,
) -> EssNormBracket:
    """Bracket the essential norm of a Hankel operator from truncations.

    Tail norms are computed on windows ``tail_start < degree <= N`` for each
    N in the schedule (default: the truncation degree and two shorter ones)
    by slicing one Gram matrix assembled at the full degree.
    """
    dom = dom or UNIT_BIDISK
    if not tail_starts:
        raise ValueError("need at least one tail start")
    k_max = max(tail_starts)
    if k_max >= max_degree:
        raise ValueError("tail starts must stay below the truncation degree")
    if n_schedule is None:
        n_schedule = tuple(
            sorted({n for n in (max_degree - 4, max_degree - 2, max_degree) if n > k_max})
        )
    if any(n > max_degree for n in n_schedule):
        raise ValueError("schedule exceeds the truncation degree")

    window = BasisWindow.graded(max_degree)
    full = gram(phi, window, dom, mode="float")
    degs = window.degrees()

    table: list[tuple[int, int, float]] = []
    sig_by_n: dict[int, float] = {}
    for k in sorted(tail_starts):
        for n in n_schedule:
            if n <= k:
                continue
            sel = np.flatnonzero((degs > k) & (degs <= n))
            sub = full.matrix[np.ix_(sel, sel)]
            eig = np.linalg.eigvalsh(sub) if sel.size else np.zeros(1)
            sigma = sqrt(max(float(eig[-1]), 0.0))
            table.append((k, n, sigma))
            if k == k_max:
                sig_by_n[n] = sigma

    raw_last = sig_by_n[max(sig_by_n)] if sig_by_n else 0.0
    extrap_sq = raw_last**2
    if len(sig_by_n) >= 2:
        ns = sorted(sig_by_n)
        n1, n2 = ns[-2], ns[-1]
        x1, x2 = 1.0 / (n1 + 2), 1.0 / (n2 + 2)
        s1, s2 = sig_by_n[n1] ** 2, sig_by_n[n2] ** 2
        intercept = s2 - (s1 - s2) / (x1 - x2) * x2
        extrap_sq = max(extrap_sq, intercept)

    merged: dict[complex, float] = {}
    kernel_diags = []
    for family in families:
        pts, diag = kernel_rayleigh_sequence(
            phi,
            dom,
            family=family,
            p_schedule=p_schedule,
            g_range=max_degree if kernel_g_range is None else kernel_g_range,
            tail_threshold=tail_threshold,
        )
        kernel_diags.append(diag)
        for p, v in pts:
            merged[p] = max(merged.get(p, 0.0), v)
    sequence = tuple((p, merged[p]) for p in (complex(q) for q in p_schedule))
    # Only the |p| -> 1 end of the sequence estimates the essential norm;
    # small-|p| Rayleigh values bound the full operator norm instead.
    kernel_est = merged[max(merged, key=abs)] if merged else 0.0

    upper_est = sqrt(max(extrap_sq, 0.0))
    lower_est = max(raw_last, kernel_est, upper_est)
    diagnostics = {
        "truncation_degree": max_degree,
        "degree_schedule": list(n_schedule),
        "tail_extrapolation_sq": extrap_sq,
        "raw_tail_norm": raw_last,
        "kernel_sequence_est": kernel_est,
        "kernel": kernel_diags,
    }
    return EssNormBracket(lower_est, upper_est, table, sequence, diagnostics)
