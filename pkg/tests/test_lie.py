from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from zastava.cartan import CartanMatrix
from zastava.lie import (ChainsawLie, LieBasisIndex, build_chainsaw_lie, jacobi_violations,
                         weight_violations)


def test_defining_brackets():
    alg = build_chainsaw_lie(3, (1, 1, 1))
    E = alg.element(("e_1_1_1", 1))
    Q = alg.element(("q_1_1", 1))
    assert alg.bracket(E, Q) == Q
    Ep = alg.element(("ep_1_1_1", 1))
    P = alg.element(("p_1_1", 1))
    assert alg.bracket(Ep, P) == {k: -v for k, v in P.items()}
    Q0, P1 = alg.element(("q_0_1", 1)), alg.element(("p_1_1", 1))
    assert alg.bracket(Q0, P1) == alg.element(("f_0_1_1", 1))


def test_basis_names_roundtrip():
    alg = build_chainsaw_lie(2, (1, 2))
    for b in alg.basis:
        assert LieBasisIndex.parse(b.name) == b


def test_pbw_order_by_tag():
    alg = build_chainsaw_lie(2, (1, 1), "diag")
    order = "FPQEG"
    tags = [b.tag for b in alg.basis]
    assert tags == sorted(tags, key=order.index)


@pytest.mark.parametrize("n,d", [(2, (1, 1)), (2, (0, 2)), (3, (0, 1, 1))])
@pytest.mark.parametrize("mode", ["eprime", "diag"])
def test_jacobi_and_weights(n, d, mode):
    alg = build_chainsaw_lie(n, d, mode)
    assert jacobi_violations(alg) == []
    assert weight_violations(alg) == []


def test_jacobi_detects_a_corrupted_table():
    alg = ChainsawLie(2, (1, 1))  # uncached: the table is modified below
    key = next(iter(alg.table))
    alg.table[key] = {k: 2 * v for k, v in alg.table[key].items()}
    assert jacobi_violations(alg)


@given(st.integers(0, 2), st.integers(0, 2),
       st.lists(st.tuples(st.integers(0, 40), st.integers(-3, 3)), max_size=4),
       st.lists(st.tuples(st.integers(0, 40), st.integers(-3, 3)), max_size=4))
def test_bracket_is_antisymmetric_and_bilinear(a, b, xs, ys):
    alg = build_chainsaw_lie(2, (a, b))
    N = len(alg.basis)
    if not N:
        return
    x = {k % N: Fraction(c) for k, c in xs}
    y = {k % N: Fraction(c) for k, c in ys}
    xy, yx = alg.bracket(x, y), alg.bracket(y, x)
    assert all(xy.get(k, 0) + yx.get(k, 0) == 0 for k in set(xy) | set(yx))
    x2 = {k: 2 * v for k, v in x.items()}
    assert alg.bracket(x2, y) == {k: 2 * v for k, v in xy.items()}


def test_rejects_bad_shapes():
    with pytest.raises(ValueError):
        ChainsawLie(2, (1,))
    with pytest.raises(ValueError):
        ChainsawLie(2, (1, -1))
    with pytest.raises(ValueError):
        ChainsawLie(2, (1, 1), "other")


def test_json_roundtrip():
    alg = build_chainsaw_lie(3, (0, 1, 2), "diag")
    back = ChainsawLie.from_json(alg.to_json())
    assert back.names == alg.names and back.table == alg.table


@pytest.mark.parametrize("n,d", [(2, (1, 1)), (3, (0, 1, 1)), (4, (1, 0, 2, 1))])
def test_cartan_matrix(n, d):
    C = CartanMatrix(n, d)
    for k, l in product(range(n), repeat=2):
        assert C(k, l) == C(l, k)
        if k == l:
            assert C(k, l) == 2
        elif n > 2 and (l - k) % n in (1, n - 1):
            assert C(k, l) == -1
