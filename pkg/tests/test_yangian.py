from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zastava.series import TruncSeries, TruncationError
from zastava.yangian import (a_from_A, a_series, classical_A, classical_limit_relations, node_shift,
                             phi_image, reconstruct_A, verify_yangian_relations)

coef = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@given(st.integers(0, 3), st.lists(coef, min_size=6, max_size=6))
def test_reconstruction_roundtrip(d, alphas):
    N = 4
    A = TruncSeries(d, [Fraction(1)] + alphas, d - 6)
    a = a_from_A(A, N + 1)
    assert a[0] == 1 and a[-1] == -d
    back = reconstruct_A(a, d, N)
    assert all(back[d - r] == A[d - r] for r in range(N + 1))


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=3))
def test_reconstruction_of_a_polynomial_is_exact(roots):
    # A(u) = prod (u - x_i) has zero tail; a(u) from it must reproduce it
    d = len(roots)
    coeffs = [Fraction(1)]
    for x in roots:
        coeffs = [c - x * p for c, p in zip(coeffs + [0], [0] + coeffs)]
    N = d + 3
    A = TruncSeries(d, coeffs + [Fraction(0)] * (N + 3 - len(coeffs)), d - N - 2)
    back = reconstruct_A(a_from_A(A, N + 1), d, N)
    assert all(back[k] == A[k] for k in range(d, d - N - 1, -1))


def test_reconstruction_input_checks():
    with pytest.raises(ValueError):
        reconstruct_A(a_series([], 2), 1, 2)
    with pytest.raises(ValueError):
        reconstruct_A(TruncSeries(0, [Fraction(2), Fraction(-1)]), 1, 1)
    with pytest.raises(TruncationError):
        reconstruct_A(a_series([Fraction(1)], 1), 1, 4)


def test_classical_A_is_the_characteristic_polynomial():
    xs = [Fraction(2), Fraction(-3)]
    p = [sum(x ** r for x in xs) for r in range(1, 5)]
    A = classical_A(p, 2, Fraction(0), Fraction(1))
    assert [A[k] for k in (2, 1, 0, -1, -2)] == [1, 1, -6, 0, 0]


def test_node_shifts():
    d, mu = (1, 1), (1, 0)
    assert node_shift(d, mu, 1, "d") == 1
    assert node_shift(d, mu, 2, "d") == 2
    assert node_shift(d, mu, 2, "d+mu") == 3
    assert node_shift(d, mu, 2, "mu") == 1
    with pytest.raises(ValueError):
        node_shift(d, mu, 1, "other")


def test_d1_reconstruction_and_kernel():
    rep = verify_yangian_relations(2, (0, 1), N=3)
    assert rep.ok
    rels = {e["relation"] for e in rep.entries}
    assert {"reconstruct_A(d=1)=u-e-1/2", "A_{k,d_k}=0", "A_{k,r}=0 (r>d_k)"} <= rels


def test_phi_image_shapes():
    img = phi_image(3, (0, 1, 1), N=3)
    assert set(img.nodes) == {1, 2}
    assert img.shifts == {1: 1, 2: 2}
    assert img.nodes[2]["A"].top == 1
    assert img.to_json_dict()["shifts"] == {"1": "1", "2": "2"}


def _cross_failures(shift):
    """The x x relation between the two nodes of (0,1,1) with node 2 shifted by `shift`."""
    from zastava import yangian as Y
    ctx = Y._Quantum(3, (0, 1, 1), None)
    zero = ctx.zero()
    x1, x2 = ctx.b(1, -4), ctx.b(2, -4)
    XX, XX2 = Y._both_orders(x1, x2, zero)
    XX, XX2 = (Y._shift_table(T, 1, 1 + shift, zero) for T in (XX, XX2))
    T = Y._add((1, Y._times(XX, Y._uv(1), zero)), (-1, Y._times(XX2, Y._uv(-1), zero)))
    window = lambda key: -2 <= key[0] <= -1 and -2 <= key[1] <= -1
    return [k for k in T if window(k) and not ctx.vanishes(T[k])[0]]


def test_relative_shift_is_sharp():
    assert _cross_failures(1) == []
    assert _cross_failures(0) and _cross_failures(2)


def test_affine_shift_selects_d_plus_mu():
    rep = verify_yangian_relations(2, (1, 1), mu=(1, 0), N=2, mode="affine")
    assert rep.info["beta"] == "3"
    assert rep.info["validated-shift"] == ["d+mu"]


def test_classical_limit():
    assert classical_limit_relations(2, (0, 1), N=3).ok
    assert classical_limit_relations(3, (0, 1, 1), N=3).ok
