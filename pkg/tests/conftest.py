"""Shared generators for seeded-random property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from essnorm.exact import ExactComplex
from essnorm.symbols import Symbol


def rational_coeff(rng: random.Random, span: int = 3, den: int = 3) -> ExactComplex:
    re = Fraction(rng.randint(-span, span), rng.randint(1, den))
    im = Fraction(rng.randint(-span, span), rng.randint(1, den))
    if re == 0 and im == 0:
        re = Fraction(1)
    return ExactComplex(re, im)


def random_symbol(rng: random.Random, max_exp: int = 2, n_terms: int = 3) -> Symbol:
    """Arbitrary polynomial symbol with exact rational coefficients."""
    terms = {}
    for _ in range(n_terms):
        key = tuple(rng.randint(0, max_exp) for _ in range(4))
        terms[key] = rational_coeff(rng)
    return Symbol(terms)


def random_admissible_symbol(rng: random.Random, max_exp: int = 2, n_terms: int = 3) -> Symbol:
    """Symbol whose mixed Wirtinger derivatives vanish term by term.

    Each monomial avoids simultaneous z and zbar (resp. w and wbar) factors,
    which kills d^2/dz dzbar and d^2/dw dwbar identically.
    """
    terms = {}
    for _ in range(n_terms):
        a = rng.randint(0, max_exp)
        b = 0 if a else rng.randint(0, max_exp)
        c = rng.randint(0, max_exp)
        d = 0 if c else rng.randint(0, max_exp)
        terms[(a, b, c, d)] = rational_coeff(rng)
    return Symbol(terms)


def random_boundary_vanishing(rng: random.Random, max_exp: int = 2, n_terms: int = 3) -> Symbol:
    """One-variable polynomial gamma(xi, conj xi) vanishing on |xi| = 1."""
    inner = {}
    for _ in range(n_terms):
        key = (rng.randint(0, max_exp), rng.randint(0, max_exp), 0, 0)
        inner[key] = rational_coeff(rng)
    ring = Symbol.one() - Symbol.monomial((1, 1, 0, 0))
    return ring ** rng.randint(1, 2) * Symbol(inner)
