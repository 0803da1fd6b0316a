from __future__ import annotations

import pytest

from ramify.base import INFINITY, GroundField, digit_expand_base, vp
from ramify.errors import NotAUnit, NotDivisible, PrecisionExhausted


def test_vp():
    assert vp(1, 2) == 0
    assert vp(12, 2) == 2
    assert vp(12, 3) == 1
    assert vp(81, 3) == 4


def test_infinity_ordering_and_absorption():
    assert INFINITY > 10 ** 9
    assert not INFINITY < 5
    assert INFINITY + 3 is INFINITY
    assert min(INFINITY, 7) == 7


def test_equal_char_from_int_zero_flag():
    K = GroundField.equal_char(2, 8)
    assert K.from_int(2).exact_zero
    assert K.from_int(4).exact_zero
    assert not K.from_int(3).exact_zero


def test_mixed_char_from_int_zero_flag():
    K = GroundField.mixed_char(2, 8)
    assert K.from_int(0).exact_zero
    assert not K.from_int(2).exact_zero
    assert K.from_int(2).valuation() == 1


def test_equal_char_unit_inverse():
    K = GroundField.equal_char(2, 12)
    x = K.one() + K.uniformizer()
    y = x.unit_inverse()
    assert (x * y) == K.one()


def test_mixed_char_unit_inverse():
    K = GroundField.mixed_char(5, 10)
    x = K.from_int(7)
    assert (x * x.unit_inverse()) == K.one()


def test_non_unit_inverse_raises():
    K = GroundField.mixed_char(2, 8)
    with pytest.raises(NotAUnit):
        K.from_int(2).unit_inverse()


def test_valuation_basic():
    K = GroundField.equal_char(3, 10)
    t = K.uniformizer()
    assert (t * t * t).valuation() == 3
    assert K.zero().valuation() is INFINITY
    assert K.from_int(2).valuation() == 0


def test_valuation_precision_exhausted():
    K = GroundField.equal_char(2, 4)
    t = K.uniformizer()
    x = t ** 2 - t ** 2
    # not flagged exact, all visible digits zero
    assert not x.exact_zero
    with pytest.raises(PrecisionExhausted) as err:
        x.valuation()
    assert err.value.bound is not None


def test_has_valuation_at_least():
    K = GroundField.mixed_char(2, 10)
    x = K.from_int(8)
    assert x.has_valuation_at_least(3)
    assert not x.has_valuation_at_least(4)


def test_udiv_drops_precision():
    K = GroundField.mixed_char(2, 10)
    x = K.from_int(8)
    y = x.udiv(3)
    assert y == K.one()
    assert y.prec == 7


def test_udiv_requires_divisibility():
    K = GroundField.mixed_char(2, 10)
    with pytest.raises(NotDivisible):
        K.from_int(3).udiv(1)


def test_teichmuller_mixed_is_root_of_unity():
    K = GroundField.mixed_char(5, 12)
    w = K.teichmuller(2)
    assert w ** 5 == w
    assert w.residue() == 2


def test_teichmuller_equal_is_constant():
    K = GroundField.equal_char(3, 6)
    w = K.teichmuller(2)
    assert w.residue() == 2
    assert (w * w * w) == w


def test_exact_zero_addition_keeps_other_operand():
    K = GroundField.equal_char(2, 10)
    t = K.uniformizer()
    z = K.zero(3)
    assert (t + z) == t
    assert (t + z).prec == t.prec


def test_digit_expand_base():
    K = GroundField.mixed_char(2, 10)
    assert digit_expand_base(K.from_int(3), 3) == [1, 1, 0]
    K3 = GroundField.mixed_char(3, 10)
    digits = digit_expand_base(K3.from_int(5), 4)
    assert digits[0] == 2
    rebuilt = K3.zero()
    pi = K3.uniformizer()
    for h, d in enumerate(digits):
        rebuilt = rebuilt + K3.teichmuller(d) * pi ** h
    assert (rebuilt - K3.from_int(5)).has_valuation_at_least(4)


def test_pow_zero_is_one():
    K = GroundField.equal_char(2, 8)
    t = K.uniformizer()
    assert t ** 0 == K.one()


def test_kronecker_mul_matches_schoolbook():
    K = GroundField.equal_char(3, 8)
    t = K.uniformizer()
    a = K.one() + K.from_int(2) * t + t ** 3
    b = K.from_int(2) + t ** 2
    prod = a * b
    # (1 + 2t + t^3)(2 + t^2) = 2 + 4t + t^2 + 2t^3 + 2t^3 + t^5
    expect = (K.from_int(2) + K.from_int(4) * t + t ** 2
              + K.from_int(4) * t ** 3 + t ** 5)
    assert prod == expect
