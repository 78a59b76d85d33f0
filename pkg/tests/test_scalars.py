from fractions import Fraction

import pytest
from hypothesis import given

from hodgeres.scalars import I, ONE, ZERO, GaussianRational, MixedPiPowerError, PiScalar, format_fraction

from strategies import gaussians, nonzero_gaussians


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO


@given(nonzero_gaussians)
def test_inverse(a):
    assert a * a.inverse() == ONE
    assert a / a == ONE


@given(gaussians)
def test_complex_conversion(a):
    z = complex(a)
    assert z.real == pytest.approx(float(a.re))
    assert z.imag == pytest.approx(float(a.im))


def test_i_squared():
    assert I * I == -ONE
    assert I ** 4 == ONE
    assert (-I) ** 3 == I


def test_coerce_and_equality_with_rationals():
    assert GaussianRational.coerce(Fraction(1, 3)) == Fraction(1, 3)
    assert GaussianRational(2) == 2
    assert not GaussianRational(0, 1).is_real()


def test_string_forms():
    assert str(GaussianRational(Fraction(-44, 3))) == "-44/3"
    assert str(GaussianRational(0, -1)) == "-i"
    assert str(GaussianRational(1, 2)) == "(1+2i)"
    assert format_fraction(Fraction(-44, 3)) == "-44/3"


def test_pi_grades_do_not_mix():
    a = PiScalar(Fraction(1, 8), 1)
    assert a + a == PiScalar(Fraction(1, 4), 1)
    assert a * PiScalar(4, 1) == PiScalar(Fraction(1, 2), 2)
    with pytest.raises(MixedPiPowerError):
        a + PiScalar(1, 2)
    # zero is grade-neutral
    assert a + PiScalar(0, 2) == a
