"""Polynomial symbols in z, conj(z), w, conj(w) with exact coefficients.

A symbol is a finite linear combination of monomials
``z**a * conj(z)**b * w**c * conj(w)**d`` stored as a map from the exponent
tuple ``(a, b, c, d)`` to an :class:`~essnorm.exact.ExactComplex`
coefficient.  The algebra supports Wirtinger derivatives, conjugation,
evaluation, restriction to affine disk slices through the distinguished
boundary, and the mixed-derivative admissibility check used by the bound
calculus.

Conventions used throughout:

* ``dz``/``dzbar`` treat ``z`` and ``conj(z)`` as independent variables
  (Wirtinger calculus); likewise ``dw``/``dwbar``.
* On the circle ``|w| = r`` the conjugate variable satisfies
  ``conj(w) = r**2 / w``; restrictions substitute ``w = r * u`` with ``u``
  a symbolic unimodular variable, so boundary values become Laurent
  polynomials in ``u`` with exact coefficients and no rounding occurs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, cos, sin

from .domain import ProductDomain
from .exact import ExactComplex, NumberLike

Key = tuple[int, int, int, int]

_VAR_NAMES = ("z", "z*", "w", "w*")


def _coerce_terms(terms: dict[Key, NumberLike]) -> dict[Key, ExactComplex]:
    out: dict[Key, ExactComplex] = {}
    for key, val in terms.items():
        a, b, c, d = key
        if min(a, b, c, d) < 0:
            raise ValueError(f"negative exponent in {key}")
        coeff = ExactComplex.from_number(val)
        if not coeff.is_zero:
            out[(int(a), int(b), int(c), int(d))] = coeff
    return out


class Symbol:
    """Finite exact linear combination of monomials in z, z*, w, w*."""

    __slots__ = ("terms", "exact")

    def __init__(self, terms: dict[Key, NumberLike] | None = None, exact: bool = True):
        object.__setattr__(self, "terms", _coerce_terms(terms or {}))
        object.__setattr__(self, "exact", bool(exact))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Symbol is immutable")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "Symbol":
        return Symbol()

    @staticmethod
    def one() -> "Symbol":
        return Symbol({(0, 0, 0, 0): 1})

    @staticmethod
    def monomial(key: Key, coeff: NumberLike = 1) -> "Symbol":
        return Symbol({key: coeff})

    # -- basic structure -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_holomorphic(self) -> bool:
        """True when no conjugated variable appears."""
        return all(b == 0 and d == 0 for (_, b, _, d) in self.terms)

    def max_exponents(self) -> tuple[int, int, int, int]:
        if not self.terms:
            return (0, 0, 0, 0)
        return tuple(max(k[i] for k in self.terms) for i in range(4))  # type: ignore[return-value]

    def sorted_terms(self) -> list[tuple[Key, ExactComplex]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "Symbol") -> "Symbol":
        if not isinstance(other, Symbol):
            return NotImplemented
        out = dict(self.terms)
        for key, val in other.terms.items():
            cur = out.get(key)
            out[key] = val if cur is None else cur + val
        return Symbol(out, self.exact and other.exact)

    def __sub__(self, other: "Symbol") -> "Symbol":
        return self + (-other)

    def __neg__(self) -> "Symbol":
        return Symbol({k: -v for k, v in self.terms.items()}, self.exact)

    def __mul__(self, other: "Symbol | NumberLike") -> "Symbol":
        if isinstance(other, Symbol):
            out: dict[Key, ExactComplex] = {}
            for k1, v1 in self.terms.items():
                for k2, v2 in other.terms.items():
                    key = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2], k1[3] + k2[3])
                    prod = v1 * v2
                    cur = out.get(key)
                    out[key] = prod if cur is None else cur + prod
            return Symbol(out, self.exact and other.exact)
        scalar = ExactComplex.from_number(other)
        return Symbol({k: v * scalar for k, v in self.terms.items()}, self.exact)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Symbol":
        if n < 0:
            raise ValueError("negative symbol power")
        result = Symbol.one()
        for _ in range(n):
            result = result * self
        return result

    def conjugate(self) -> "Symbol":
        return Symbol(
            {(b, a, d, c): v.conjugate() for (a, b, c, d), v in self.terms.items()},
            self.exact,
        )

    def __eq__(self, other: object) -> bool:
        # Exactness is metadata; equality compares term maps only.
        if isinstance(other, Symbol):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- calculus --------------------------------------------------------

    def _derive(self, slot: int) -> "Symbol":
        out: dict[Key, ExactComplex] = {}
        for key, val in self.terms.items():
            e = key[slot]
            if e == 0:
                continue
            new = list(key)
            new[slot] = e - 1
            nk = tuple(new)
            contrib = val * e
            cur = out.get(nk)
            out[nk] = contrib if cur is None else cur + contrib
        return Symbol(out, self.exact)

    def dz(self) -> "Symbol":
        return self._derive(0)

    def dzbar(self) -> "Symbol":
        return self._derive(1)

    def dw(self) -> "Symbol":
        return self._derive(2)

    def dwbar(self) -> "Symbol":
        return self._derive(3)

    def dbar(self, coordinate: str) -> "Symbol":
        if coordinate == "z":
            return self.dzbar()
        if coordinate == "w":
            return self.dwbar()
        raise ValueError(f"unknown coordinate {coordinate!r}")

    def eval(self, zval: NumberLike, wval: NumberLike):
        """Evaluate at a point.

        With :class:`ExactComplex` (or rational) arguments the result is an
        :class:`ExactComplex`; with floats or complex it is a ``complex``.
        """
        exact_args = all(isinstance(v, (int, Fraction, ExactComplex)) for v in (zval, wval))
        if exact_args:
            ze = ExactComplex.from_number(zval)
            we = ExactComplex.from_number(wval)
            acc = ExactComplex(0)
            for (a, b, c, d), coeff in self.terms.items():
                term = coeff
                for base, e in ((ze, a), (ze.conjugate(), b), (we, c), (we.conjugate(), d)):
                    for _ in range(e):
                        term = term * base
                acc = acc + term
            return acc
        zc, wc = complex(zval), complex(wval)  # type: ignore[arg-type]
        total = 0j
        for (a, b, c, d), coeff in self.terms.items():
            total += complex(coeff) * zc**a * zc.conjugate() ** b * wc**c * wc.conjugate() ** d
        return total

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        terms = []
        for (a, b, c, d), coeff in self.sorted_terms():
            terms.append(
                {"z": a, "zbar": b, "w": c, "wbar": d, "re": str(coeff.re), "im": str(coeff.im)}
            )
        return {"terms": terms}

    @staticmethod
    def from_json_dict(data: dict) -> "Symbol":
        if not isinstance(data, dict) or "terms" not in data:
            raise ValueError("symbol JSON must be an object with a 'terms' list")
        terms: dict[Key, ExactComplex] = {}
        exact = True
        for entry in data["terms"]:
            key = tuple(int(entry.get(name, 0)) for name in ("z", "zbar", "w", "wbar"))
            parts = []
            for part in ("re", "im"):
                raw = entry.get(part, 0)
                value, part_exact = _parse_rational(raw)
                exact = exact and part_exact
                parts.append(value)
            coeff = ExactComplex(parts[0], parts[1])
            if not coeff.is_zero:
                cur = terms.get(key)  # type: ignore[arg-type]
                terms[key] = coeff if cur is None else cur + coeff  # type: ignore[index]
        return Symbol(terms, exact)

    @staticmethod
    def from_json(text: str) -> "Symbol":
        return Symbol.from_json_dict(json.loads(text))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, coeff in self.sorted_terms():
            mono = " ".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(_VAR_NAMES, key)
                if e > 0
            )
            cs = _fmt_coeff(coeff)
            if mono:
                parts.append(mono if cs == "1" else f"-{mono}" if cs == "-1" else f"{cs} {mono}")
            else:
                parts.append(cs)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Symbol({self.terms!r})"


def _parse_rational(raw) -> tuple[Fraction, bool]:
    """Parse a JSON coefficient part; returns (value, was_exact)."""
    if isinstance(raw, bool):
        raise ValueError("boolean is not a coefficient")
    if isinstance(raw, int):
        return Fraction(raw), True
    if isinstance(raw, float):
        return Fraction(raw), False
    if isinstance(raw, str):
        s = raw.strip()
        if "." in s or "e" in s or "E" in s:
            # Decimal strings convert exactly but are flagged inexact.
            return Fraction(s), False
        return Fraction(s), True
    raise ValueError(f"cannot parse coefficient {raw!r}")


def _fmt_coeff(c: ExactComplex) -> str:
    if not c.im:
        return str(c.re)
    if not c.re:
        return f"{c.im}i" if c.im != 1 else "i"
    sign = "+" if c.im > 0 else "-"
    return f"({c.re} {sign} {abs(c.im)}i)"


# Convenience generators.
z = Symbol.monomial((1, 0, 0, 0))
zbar = Symbol.monomial((0, 1, 0, 0))
w = Symbol.monomial((0, 0, 1, 0))
wbar = Symbol.monomial((0, 0, 0, 1))


# -- affine disk slices ---------------------------------------------------


@dataclass(frozen=True)
class DiskSlice:
    """Affine analytic disk through the distinguished boundary.

    For ``family == "z"`` the map is ``xi -> (center + scale*xi, q)`` with
    ``q`` on the circle of radius r2 at ``boundary_angle``; for
    ``family == "w"`` the roles of the coordinates swap.  The image of the
    closed unit disk must stay inside the closed varying-coordinate disk,
    i.e. ``|center| + |scale| <= radius``.
    """

    family: str
    boundary_angle: float
    center: complex
    scale: complex
    domain: ProductDomain = field(default_factory=ProductDomain)

    def __post_init__(self) -> None:
        if self.family not in ("z", "w"):
            raise ValueError("family must be 'z' or 'w'")
        if self.scale == 0:
            raise ValueError("slice must be nondegenerate (scale != 0)")
        r = float(self.varying_radius)
        if abs(self.center) + abs(self.scale) > r + 1e-12:
            raise ValueError(
                f"slice leaves the domain: |center| + |scale| = "
                f"{abs(self.center) + abs(self.scale):.6g} > {r:.6g}"
            )

    @property
    def varying_radius(self) -> Fraction:
        return self.domain.r1 if self.family == "z" else self.domain.r2

    @property
    def fixed_radius(self) -> Fraction:
        return self.domain.r2 if self.family == "z" else self.domain.r1

    @property
    def fixed_point(self) -> complex:
        r = float(self.fixed_radius)
        return complex(r * cos(self.boundary_angle), r * sin(self.boundary_angle))

    def map(self, xi: complex) -> tuple[complex, complex]:
        moving = self.center + self.scale * xi
        if self.family == "z":
            return moving, self.fixed_point
        return self.fixed_point, moving

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "boundary_angle": self.boundary_angle,
            "center": [self.center.real, self.center.imag],
            "scale": [self.scale.real, self.scale.imag],
        }


class SliceSymbol:
    """Restriction of a symbol to a disk slice.

    A polynomial in ``xi, conj(xi)`` whose coefficients are exact Laurent
    polynomials in the unimodular boundary variable ``u = exp(i*theta)``:
    ``terms[(j, k)][q]`` is the coefficient of ``xi**j conj(xi)**k u**q``.
    Keeping ``u`` symbolic makes restriction an exact operation even though
    the slice's boundary angle is a float.
    """

    __slots__ = ("terms", "exact")

    def __init__(self, terms: dict[tuple[int, int], dict[int, ExactComplex]] | None = None, exact: bool = True):
        canon: dict[tuple[int, int], dict[int, ExactComplex]] = {}
        for jk, umap in (terms or {}).items():
            pruned = {q: v for q, v in umap.items() if not v.is_zero}
            if pruned:
                canon[jk] = pruned
        object.__setattr__(self, "terms", canon)
        object.__setattr__(self, "exact", bool(exact))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("SliceSymbol is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def dbar(self) -> "SliceSymbol":
        """Derivative in conj(xi)."""
        out: dict[tuple[int, int], dict[int, ExactComplex]] = {}
        for (j, k), umap in self.terms.items():
            if k == 0:
                continue
            out[(j, k - 1)] = {q: v * k for q, v in umap.items()}
        return SliceSymbol(out, self.exact)

    def scaled(self, factor: NumberLike) -> "SliceSymbol":
        f = ExactComplex.from_number(factor)
        return SliceSymbol(
            {jk: {q: v * f for q, v in umap.items()} for jk, umap in self.terms.items()},
            self.exact,
        )

    def eval(self, xi: complex, boundary_angle: float) -> complex:
        total = 0j
        xic = complex(xi)
        for (j, k), umap in self.terms.items():
            coeff = 0j
            for q, v in umap.items():
                coeff += complex(v) * complex(cos(q * boundary_angle), sin(q * boundary_angle))
            total += coeff * xic**j * xic.conjugate() ** k
        return total

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SliceSymbol):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset((jk, frozenset(um.items())) for jk, um in self.terms.items()))

    def __repr__(self) -> str:
        return f"SliceSymbol({self.terms!r})"


@dataclass(frozen=True)
class Restriction:
    """A restricted symbol together with its xi-bar derivative."""

    slice: DiskSlice
    composed: SliceSymbol
    composed_dbar: SliceSymbol


def restrict(s: Symbol, F: DiskSlice) -> Restriction:
    """Compose a symbol with an affine disk slice, exactly.

    The varying coordinate is expanded binomially around the slice center;
    the fixed coordinate contributes ``r**(c+d) * u**(c-d)`` on its circle.
    Center and scale are binary floats, hence exact rationals.
    """
    p = ExactComplex.from_number(complex(F.center))
    c = ExactComplex.from_number(complex(F.scale))
    pbar, cbar = p.conjugate(), c.conjugate()
    rfix = F.fixed_radius

    out: dict[tuple[int, int], dict[int, ExactComplex]] = {}
    for key, coeff in s.terms.items():
        a0, b0, c0, d0 = key
        if F.family == "z":
            va, vb, fc, fd = a0, b0, c0, d0
        else:
            va, vb, fc, fd = c0, d0, a0, b0
        base = coeff * rfix ** (fc + fd)
        uexp = fc - fd
        for i in range(va + 1):
            zi = base * comb(va, i)
            for _ in range(va - i):
                zi = zi * p
            for _ in range(i):
                zi = zi * c
            for j in range(vb + 1):
                term = zi * comb(vb, j)
                for _ in range(vb - j):
                    term = term * pbar
                for _ in range(j):
                    term = term * cbar
                if term.is_zero:
                    continue
                slot = out.setdefault((i, j), {})
                cur = slot.get(uexp)
                slot[uexp] = term if cur is None else cur + term
    composed = SliceSymbol(out, s.exact)
    return Restriction(F, composed, composed.dbar())


# -- admissibility --------------------------------------------------------


@dataclass(frozen=True)
class HarmonicityReport:
    """Result of the mixed-derivative admissibility check.

    ``witnesses`` maps each failing family to the boundary symbol that the
    corresponding mixed Wirtinger derivative restricts to on the fixed
    coordinate's circle; admissible symbols have no witnesses.
    """

    admissible: bool
    witnesses: tuple[tuple[str, Symbol], ...]

    def to_json_dict(self) -> dict:
        return {
            "admissible": self.admissible,
            "witnesses": [
                {"family": fam, "residual": wit.to_json_dict()} for fam, wit in self.witnesses
            ],
        }


def circle_residual(s: Symbol, coordinate: str, radius: Fraction) -> Symbol:
    """Restrict a symbol to the circle ``|coordinate| = radius``.

    Substitutes ``coordinate = radius * u`` with unimodular ``u`` and
    collects the Laurent expansion; the result is re-expressed as a boundary
    symbol (nonnegative powers of either the variable or its conjugate),
    which vanishes identically iff the restriction does.
    """
    out: dict[Key, ExactComplex] = {}
    for key, coeff in s.terms.items():
        a, b, c, d = key
        if coordinate == "w":
            q, scaled = c - d, coeff * radius ** (c + d)
            nk = (a, b, q, 0) if q >= 0 else (a, b, 0, -q)
            scaled = scaled / radius ** abs(q)
        else:
            q, scaled = a - b, coeff * radius ** (a + b)
            nk = (q, 0, c, d) if q >= 0 else (0, -q, c, d)
            scaled = scaled / radius ** abs(q)
        cur = out.get(nk)
        out[nk] = scaled if cur is None else cur + scaled
    return Symbol(out, s.exact)


def check_admissible(s: Symbol, dom: ProductDomain | None = None) -> HarmonicityReport:
    """Check that every affine boundary slice pulls the symbol back to a
    harmonic function of the disk parameter.

    For the family varying in ``z`` this holds iff the mixed derivative
    ``d^2 s / dz dzbar`` vanishes identically once the other coordinate is
    restricted to its boundary circle, and symmetrically for ``w``.
    """
    dom = dom or ProductDomain()
    witnesses: list[tuple[str, Symbol]] = []
    mixed_z = s.dz().dzbar()
    res_z = circle_residual(mixed_z, "w", dom.r2)
    if not res_z.is_zero:
        witnesses.append(("z", res_z))
    mixed_w = s.dw().dwbar()
    res_w = circle_residual(mixed_w, "z", dom.r1)
    if not res_w.is_zero:
        witnesses.append(("w", res_w))
    return HarmonicityReport(admissible=not witnesses, witnesses=tuple(witnesses))
