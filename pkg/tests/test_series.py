from fractions import Fraction

import pytest

from folinv.errors import PrecisionExhausted
from folinv.poly import parse_poly
from folinv.series import TruncSeries, series_substitute


def test_substitute_own_zero_set():
    # the cusp parametrization annihilates its equation to all precision
    f = parse_poly("y^2 - x^3")
    x_t = TruncSeries.monomial(2)
    y_t = TruncSeries.monomial(3)
    val = series_substitute(f, x_t, y_t)
    assert not val.coeffs and val.is_exact


def test_substitute_coordinate():
    val = series_substitute(parse_poly("x"), TruncSeries.monomial(2), TruncSeries.monomial(3))
    assert val.coeffs == {2: Fraction(1)}


def test_substitute_suzuki_coefficient():
    val = series_substitute(
        parse_poly("2*y^2 + x^3"), TruncSeries.monomial(2), TruncSeries.monomial(3)
    )
    assert val.coeffs == {6: Fraction(3)}
    assert val.order() == 6


def test_precision_tracking_through_products():
    a = TruncSeries({1: Fraction(1)}, 5)   # t + O(t^5)
    b = TruncSeries({2: Fraction(1)}, 4)   # t^2 + O(t^4)
    prod = a * b
    # noise from a enters at 5 + ord(b) = 7; from b at 4 + ord(a) = 5
    assert prod.precision == 5
    assert prod.coeffs == {3: Fraction(1)}


def test_order_certification():
    s = TruncSeries({}, 6)
    with pytest.raises(PrecisionExhausted):
        s.order()
    assert TruncSeries({}, None).order() is None
    assert TruncSeries({4: Fraction(2)}, 6).order() == 4


def test_inverse():
    s = TruncSeries({0: Fraction(2), 1: Fraction(1)}, None)
    inv = s.inverse(8)
    one = (s * inv).truncate(8)
    assert one.coeffs == {0: Fraction(1)}


def test_derivative_and_shift():
    s = TruncSeries({2: Fraction(3), 5: Fraction(-1)}, 7)
    d = s.derivative()
    assert d.coeffs == {1: Fraction(6), 4: Fraction(-5)}
    assert d.precision == 6
    assert s.shift(2).coeffs == {4: Fraction(3), 7: Fraction(-1)}
    assert s.shift(2).precision == 9
