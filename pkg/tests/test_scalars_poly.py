from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zastava.poly import MultiPoly, poly_arith, polys
from zastava.scalars import GF, Q, fmt_q, parse_q

rationals = st.fractions(min_value=-10 ** 6, max_value=10 ** 6, max_denominator=50)
NAMES = ("x", "y", "z")


@st.composite
def small_polys(draw):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), rationals, max_size=5))
    return MultiPoly(NAMES, terms)


@given(rationals)
def test_rational_string_roundtrip(x):
    assert parse_q(fmt_q(x)) == x
    assert Q(fmt_q(x)) == x


def test_q_rejects_floats():
    with pytest.raises(TypeError):
        Q(0.5)


@given(st.integers(), st.integers(), st.integers(1, 6))
def test_prime_field_arithmetic_matches_integers(a, b, k):
    p = [2, 3, 5, 7, 11, 13][k - 1]
    x, y = GF(a, p), GF(b, p)
    assert (x + y).v == (a + b) % p
    assert (x * y).v == (a * b) % p
    if x.v:
        assert (x * x.inverse()).v == 1


def test_gf_requires_prime():
    with pytest.raises(ValueError):
        GF(1, 4)


@given(small_polys(), small_polys(), small_polys())
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert (f + g) - g == f


@given(small_polys(), small_polys())
def test_leibniz_rule(f, g):
    assert (f * g).partial("x") == f.partial("x") * g + f * g.partial("x")


@given(small_polys(), st.dictionaries(st.sampled_from(NAMES), rationals, min_size=3, max_size=3))
def test_evaluation_is_a_homomorphism(f, vals):
    g = f * f + f
    assert g.evaluate(vals) == f.evaluate(vals) ** 2 + f.evaluate(vals)


def test_poly_arith_kinds():
    x, y, z = polys(NAMES)
    assert poly_arith(x, y, "add") == x + y
    assert poly_arith(x, y, "mul") == x * y
    assert poly_arith(x * x * y, None, "partial-derivative", "x") == (x * y).scale(2)
    with pytest.raises(KeyError):
        poly_arith(x, None, "partial-derivative", "w")
    with pytest.raises(ValueError):
        poly_arith(x, y, "divide")


def test_substitute_and_scalar():
    x, y, z = polys(NAMES)
    f = x * x + y
    assert f.substitute({"x": y + z}) == y * y + z * z + (y * z).scale(2) + y
    assert MultiPoly.constant(NAMES, Fraction(3, 2)).as_scalar() == Fraction(3, 2)
    assert (x + 1).as_scalar() is None
