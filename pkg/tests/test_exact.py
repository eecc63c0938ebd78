from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from essnorm.exact import ExactComplex, PiScalar, SqrtScaled, _square_free


def test_exact_complex_field_ops():
    a = ExactComplex(Fraction(1, 3), Fraction(-2, 5))
    b = ExactComplex(Fraction(7, 2), Fraction(1, 4))
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a * b == b * a
    assert -a + a == ExactComplex(0)
    assert a.conjugate().conjugate() == a
    assert a.abs2() == Fraction(1, 9) + Fraction(4, 25)


def test_exact_complex_from_float_is_exact():
    # 0.1 is a dyadic approximation; Fraction(float) must capture it exactly
    c = ExactComplex.from_number(0.1)
    assert c.re == Fraction(0.1)
    assert c.re != Fraction(1, 10)
    assert complex(ExactComplex.from_number(1.5 - 2.25j)) == 1.5 - 2.25j


def test_exact_complex_from_various():
    assert ExactComplex.from_number(3) == ExactComplex(3, 0)
    assert ExactComplex.from_number(Fraction(2, 7)).re == Fraction(2, 7)
    c = ExactComplex(1, 2)
    assert ExactComplex.from_number(c) is c


def test_exact_complex_division_roundtrip_random():
    rng = random.Random(7)
    for _ in range(50):
        a = ExactComplex(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                         Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        b = ExactComplex(Fraction(rng.randint(1, 9), rng.randint(1, 9)),
                         Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        assert (a / b) * b == a


def test_exact_complex_immutable_and_hashable():
    a = ExactComplex(1, 2)
    with pytest.raises(AttributeError):
        a.re = Fraction(3)
    assert hash(a) == hash(ExactComplex(1, 2))


def test_pi_scalar_moment_calculus():
    half_pi = PiScalar(Fraction(1, 2), 1)
    assert float(half_pi) == pytest.approx(math.pi / 2, abs=0)
    assert (half_pi * half_pi).power == 2
    assert float(half_pi * 4) == pytest.approx(2 * math.pi)
    assert (half_pi - half_pi).is_zero
    # zero is compatible with any power
    assert (PiScalar.zero() + half_pi) == half_pi
    with pytest.raises(ValueError):
        _ = half_pi + PiScalar(1, 2)


def test_pi_scalar_division_and_conjugate():
    x = PiScalar(ExactComplex(1, 1), 2)
    y = PiScalar(Fraction(1, 3), 1)
    q = x / y
    assert q.power == 1
    assert q * y == x
    assert x.conjugate().coeff == ExactComplex(1, -1)
    with pytest.raises(ValueError):
        float(x)


def test_square_free_property():
    rng = random.Random(11)
    for n in list(range(1, 60)) + [rng.randint(60, 5000) for _ in range(40)]:
        s, r = _square_free(n)
        assert s * s * r == n
        assert all(r % (d * d) for d in range(2, int(math.isqrt(r)) + 1))


def test_sqrt_scaled_canonical():
    assert SqrtScaled(1, 8) == SqrtScaled(2, 2)
    assert SqrtScaled(1, 9) == SqrtScaled(3, 1)
    assert SqrtScaled(Fraction(1, 2), 2) * SqrtScaled(Fraction(1, 2), 2) == SqrtScaled(Fraction(1, 2), 1)
    assert SqrtScaled(1, 6) * SqrtScaled(1, 10) == SqrtScaled(2, 15)
    assert complex(SqrtScaled(Fraction(1, 2), 2)) == pytest.approx(1 / math.sqrt(2))
    assert SqrtScaled(0, 5).is_zero
    assert SqrtScaled(0, 5).radicand == 1
    assert SqrtScaled(3, 0).is_zero


def test_sqrt_scaled_abs2():
    v = SqrtScaled(ExactComplex(Fraction(1, 2), Fraction(1, 2)), 2)
    assert v.abs2() == Fraction(1)
    with pytest.raises(ValueError):
        SqrtScaled(1, -1)
