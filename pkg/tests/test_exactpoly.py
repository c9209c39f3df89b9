"""The exact rational ring with the parameter relations."""

from fractions import Fraction

import pytest

from akhlab.exactpoly import (
    DEFAULT_RELATIONS,
    WRONG_B_RELATIONS,
    ExactPoly,
    generators,
)


def test_s_square_reduces_to_2a():
    a, s, b, i, one = generators()
    assert s * s == 2 * a
    assert (s * s * s) == 2 * a * s


def test_b_square_reduces():
    a, s, b, i, one = generators()
    assert b * b == 8 * a - 16 * a * a
    assert b * b * b == (8 * a - 16 * a * a) * b


def test_wrong_relation_ring():
    a, s, b, i, one = generators(WRONG_B_RELATIONS)
    assert b * b == 8 * a


def test_zero_polynomial_is_empty():
    a, s, b, i, one = generators()
    z = a - a
    assert z.is_zero
    assert z.re == {} and z.im == {}
    assert str(z) == "0"


def test_binomial_with_relation():
    a, s, b, i, one = generators()
    # (a + s)^2 = a^2 + 2 a s + s^2 = a^2 + 2 a s + 2a
    lhs = (a + s) ** 2
    rhs = a * a + 2 * a * s + 2 * a
    assert lhs == rhs


def test_complex_arithmetic():
    a, s, b, i, one = generators()
    assert (i * i) == -1 * one
    z = (one + i * b) * (one - i * b)
    # 1 + b^2 = 1 + 8a - 16a^2
    assert z == one + 8 * a - 16 * a * a
    assert z.im == {}


def test_fraction_scalars():
    a, s, b, i, one = generators()
    expr = Fraction(3, 2) * a - Fraction(1, 2) * a
    assert expr == a


def test_pow_validation():
    a, *_ = generators()
    with pytest.raises(ValueError):
        a ** (-1)
    assert a**0 == ExactPoly.constant(1)


def test_mixed_relations_rejected():
    a1, *_ = generators(DEFAULT_RELATIONS)
    a2, *_ = generators(WRONG_B_RELATIONS)
    with pytest.raises(ValueError):
        _ = a1 + a2


def test_str_rendering():
    a, s, b, i, one = generators()
    assert str(2 * a) == "2*a"
    assert "i*" in str(i * b)
    assert str(a * a + s) in ("1*s + 1*a^2", "1*a^2 + 1*s")
