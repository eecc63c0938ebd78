from __future__ import annotations

import cmath
import random
from fractions import Fraction

import pytest

from conftest import random_admissible_symbol, random_symbol
from essnorm import ProductDomain, check_admissible, restrict
from essnorm.exact import ExactComplex
from essnorm.symbols import DiskSlice, Symbol, w, wbar, z, zbar


def _fd_derivative(s: Symbol, slot: str, zv: complex, wv: complex, h: float = 1e-6) -> complex:
    """Wirtinger derivative by central differences on the underlying R^4."""

    def at(dz: complex = 0, dw: complex = 0) -> complex:
        return s.eval(complex(zv) + dz, complex(wv) + dw)

    if slot in ("dz", "dzbar"):
        fx = (at(dz=h) - at(dz=-h)) / (2 * h)
        fy = (at(dz=1j * h) - at(dz=-1j * h)) / (2 * h)
    else:
        fx = (at(dw=h) - at(dw=-h)) / (2 * h)
        fy = (at(dw=1j * h) - at(dw=-1j * h)) / (2 * h)
    if slot.endswith("bar"):
        return (fx + 1j * fy) / 2
    return (fx - 1j * fy) / 2


def test_wirtinger_matches_finite_differences():
    rng = random.Random(101)
    for _ in range(12):
        s = random_symbol(rng)
        zv = complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
        wv = complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
        for slot, deriv in (("dz", s.dz()), ("dzbar", s.dzbar()),
                            ("dw", s.dw()), ("dwbar", s.dwbar())):
            have = deriv.eval(zv, wv)
            want = _fd_derivative(s, slot, zv, wv)
            assert cmath.isclose(complex(have), want, rel_tol=0, abs_tol=5e-5)


def test_derivative_leibniz_exact():
    rng = random.Random(33)
    for _ in range(10):
        f, g = random_symbol(rng), random_symbol(rng)
        assert (f * g).dz() == f.dz() * g + f * g.dz()
        assert (f * g).dwbar() == f.dwbar() * g + f * g.dwbar()


def test_conjugation_swaps_derivatives():
    rng = random.Random(34)
    for _ in range(10):
        f = random_symbol(rng)
        assert f.conjugate().dz() == f.dzbar().conjugate()
        assert f.conjugate().conjugate() == f
    assert zbar == z.conjugate()
    assert wbar == w.conjugate()


def test_dbar_dispatch_and_holomorphy():
    s = z**2 * w + Symbol.one() * 3
    assert s.is_holomorphic
    assert s.dbar("z").is_zero and s.dbar("w").is_zero
    assert zbar.dbar("z") == Symbol.one()
    with pytest.raises(ValueError):
        s.dbar("q")


def test_eval_exact_coefficients_exact_points():
    s = Symbol({(1, 0, 0, 1): Fraction(2, 3)})
    val = s.eval(ExactComplex(Fraction(1, 2)), ExactComplex(0, Fraction(1, 3)))
    assert isinstance(val, ExactComplex)
    # (2/3) * (1/2) * conj(i/3) = -i/9
    assert val == ExactComplex(0, Fraction(-1, 9))


def test_symbol_algebra_misc():
    assert (z + w) ** 2 == z**2 + z * w * 2 + w**2
    assert (z - z).is_zero
    assert Symbol.zero().dz().is_zero
    s = z * zbar
    assert s.dz().dzbar() == Symbol.one()
    assert str(zbar * -1) == "-z*"


def test_json_roundtrip_exact():
    rng = random.Random(55)
    for _ in range(8):
        s = random_symbol(rng)
        back = Symbol.from_json_dict(s.to_json_dict())
        assert back == s
        assert back.exact


def test_json_decimal_strings_marked_inexact():
    data = {"terms": [{"z": 0, "zbar": 1, "w": 0, "wbar": 0, "re": "0.25", "im": "0"}]}
    s = Symbol.from_json_dict(data)
    assert s == zbar * Fraction(1, 4)
    assert not s.exact


def test_disk_slice_validation():
    with pytest.raises(ValueError):
        DiskSlice("z", 0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        DiskSlice("z", 0.0, 0.7, 0.5)
    with pytest.raises(ValueError):
        DiskSlice("q", 0.0, 0.0, 1.0)
    slc = DiskSlice("w", 0.5, 0.25j, 0.5)
    zv, wv = slc.map(1j)
    assert wv == 0.25j + 0.5j
    assert zv == pytest.approx(cmath.exp(0.5j))


def test_restrict_agrees_with_pointwise_eval():
    rng = random.Random(77)
    for _ in range(8):
        s = random_symbol(rng)
        slc = DiskSlice("z", rng.uniform(0, 6.28), 0.2 + 0.1j, 0.5 * cmath.exp(1j * rng.uniform(0, 6.28)))
        res = restrict(s, slc)
        for _ in range(4):
            xi = cmath.rect(rng.uniform(0, 1), rng.uniform(0, 6.28))
            want = s.eval(*slc.map(xi))
            assert cmath.isclose(res.composed.eval(xi, slc.boundary_angle), complex(want), abs_tol=1e-12)


def test_restrict_chain_rule_exact():
    # d/d(conj xi) of phi(F(xi)) equals conj(scale) * (dbar phi)(F(xi))
    rng = random.Random(78)
    for family, coord in (("z", "z"), ("w", "w")):
        for _ in range(6):
            s = random_symbol(rng)
            scale = ExactComplex(Fraction(1, 4), Fraction(1, 4))
            slc = DiskSlice(family, 1.1, Fraction(1, 4), complex(scale))
            lhs = restrict(s, slc).composed_dbar
            rhs = restrict(s.dbar(coord), slc).composed.scaled(scale.conjugate())
            assert lhs == rhs


def test_admissible_accepts_and_rejects():
    dom = ProductDomain()
    for good in (zbar, wbar, zbar * wbar, zbar + wbar, z**2 * w + z * 3, Symbol.one()):
        rep = check_admissible(good, dom)
        assert rep.admissible and not rep.witnesses
    for bad in (z * zbar, w * wbar, zbar * (Symbol.one() - w * wbar)):
        rep = check_admissible(bad, dom)
        assert not rep.admissible
        assert rep.witnesses
        assert all(not wit.is_zero for _, wit in rep.witnesses)


def test_admissible_witness_backmap():
    # mixed w-derivative of zbar*(1 - w*wbar) restricted to |w| = 1 is -zbar
    rep = check_admissible(zbar * (Symbol.one() - w * wbar))
    fams = dict(rep.witnesses)
    assert fams["w"] == -zbar


def test_admissible_random_generator_is_admissible():
    rng = random.Random(99)
    for _ in range(20):
        s = random_admissible_symbol(rng)
        assert check_admissible(s).admissible


def test_circle_residual_radius_dependence():
    # r^2 - w*wbar dies exactly on the circle of radius r, nowhere else
    from essnorm.symbols import circle_residual

    ring = Symbol.one() * Fraction(1, 4) - w * wbar
    assert circle_residual(ring, "w", Fraction(1, 2)).is_zero
    assert not circle_residual(ring, "w", Fraction(1)).is_zero
    # Laurent collapse: powers of u cancel charge by charge
    mixed = (z * zbar * w).dz().dzbar()
    res = circle_residual(mixed, "w", Fraction(1))
    assert res == w
