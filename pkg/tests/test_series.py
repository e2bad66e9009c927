from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from zastava.series import TruncSeries, TruncationError, series_mul_inv, series_shift

coef = st.fractions(min_value=-100, max_value=100, max_denominator=9)


@st.composite
def unit_series(draw, length=6):
    rest = draw(st.lists(coef, min_size=length - 1, max_size=length - 1))
    return TruncSeries(0, [Fraction(1)] + rest)


@given(unit_series())
def test_inverse_roundtrip(f):
    prod = f * series_mul_inv(f)
    assert prod[0] == 1
    assert all(prod[k] == 0 for k in range(-1, prod.low - 1, -1))


@given(unit_series(), coef, coef)
def test_shift_composes(f, a, b):
    assert (f.shift(a).shift(b) - f.shift(a + b)).is_zero()


@given(st.lists(coef, min_size=1, max_size=4), coef)
def test_polynomial_shift_against_sympy(cs, c):
    u = sympy.Symbol("u")
    top = len(cs) - 1
    f = TruncSeries.exact({top - k: x for k, x in enumerate(cs)})
    expr = sympy.expand(sum(sympy.Rational(x.numerator, x.denominator) * (u + sympy.Rational(c.numerator, c.denominator)) ** (top - k)
                            for k, x in enumerate(cs)))
    g = series_shift(f, c)
    for k in range(top + 1):
        want = expr.coeff(u, k)
        assert g[k] == Fraction(int(want.p), int(want.q))


def test_negative_power_shift_matches_geometric_series():
    # 1/(u - 1) = u^-1 + u^-2 + ...; shifting by 1 gives 1/u
    f = TruncSeries(-1, [Fraction(1)] * 8)
    g = f.shift(1)
    assert g[-1] == 1
    assert all(g[k] == 0 for k in range(-2, g.low - 1, -1))


def test_reading_below_truncation_raises():
    f = TruncSeries(0, [Fraction(1), Fraction(2)])
    with pytest.raises(TruncationError):
        f[-5]


def test_json_roundtrip():
    f = TruncSeries(1, [Fraction(1), Fraction(-1, 3), Fraction(0), Fraction(7)])
    g = TruncSeries.from_json(f.to_json())
    assert g.top == f.top and g.low == f.low and g.coeffs == f.coeffs
