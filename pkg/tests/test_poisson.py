from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zastava.lie import build_chainsaw_lie
from zastava.poisson import (ConstraintPoint, RangeError, SizeLimitError, classical_generator,
                             etale_bracket_check, example_relations, lie_poisson_bracket,
                             sample_constraint_point, sample_slice_point, spectral_pair, sym_var,
                             verify_ideal_invariance, verify_poisson_relations)
from zastava.poly import MultiPoly


def test_lie_poisson_bracket_on_letters():
    alg = build_chainsaw_lie(3, (0, 1, 1))
    h = lie_poisson_bracket(alg, sym_var(alg, "q_1_1"), sym_var(alg, "p_2_1"))
    assert h == sym_var(alg, "f_1_1_1")


def test_bracket_is_a_derivation():
    alg = build_chainsaw_lie(2, (0, 2))
    x, y, z = (sym_var(alg, s) for s in ("e_1_1_2", "p_1_1", "q_1_2"))
    lhs = lie_poisson_bracket(alg, x, y * z)
    rhs = lie_poisson_bracket(alg, x, y) * z + y * lie_poisson_bracket(alg, x, z)
    assert lhs == rhs


@pytest.mark.parametrize("d", [1, 2, 3])
def test_sl2_relations_single_node(d):
    rep = verify_poisson_relations(2, (0, d), max_index=3)
    assert rep.info["case"] == "sl2"
    assert rep.ok and len(rep.entries) > 0


def test_relations_on_a_two_node_window():
    rep = verify_poisson_relations(3, (0, 1, 1), max_index=2)
    assert rep.ok
    names = {e["relation"] for e in rep.to_dict()["entries"]}
    assert "serre" in names and any(x.startswith("chain") for x in names)


def test_size_limit():
    with pytest.raises(SizeLimitError):
        verify_poisson_relations(2, (3, 3))


def test_generator_index_errors():
    alg = build_chainsaw_lie(2, (0, 1))
    with pytest.raises(RangeError):
        classical_generator(alg, "a", 1, (-1,))
    with pytest.raises(RangeError):
        classical_generator(alg, "zz", 1, (0,))


@pytest.mark.parametrize("n,d", [(2, (1, 1)), (3, (0, 1, 1))])
def test_constraint_ideal_is_invariant(n, d):
    assert verify_ideal_invariance(n, d).ok


@given(st.integers(0, 10 ** 6))
def test_sampled_points_satisfy_the_constraint(seed):
    pt = sample_constraint_point(3, (1, 1, 2), seed)
    assert pt.satisfies()
    assert ConstraintPoint.from_json(pt.to_json()) == pt


@pytest.mark.parametrize("d", [(0, 2), (0, 3)])
def test_etale_brackets_single_node(d):
    for seed in range(5):
        assert etale_bracket_check(sample_slice_point(2, d, seed)).ok


def test_etale_cross_node_sign():
    # within a node the coefficient 2 - c_kk vanishes, so only the cross-node
    # instances see the sign; solving the constraint gives the minus sign
    pt = sample_slice_point(3, (0, 1, 1), 0)
    assert etale_bracket_check(pt, sign=-1).ok
    bad = etale_bracket_check(pt, sign=1)
    assert {f["relation"] for f in bad.failures()} == {"{y,y}=(2delta-c)yy/(x-x)"}


def test_etale_float_mode_agrees():
    pt = sample_slice_point(2, (0, 2), 3)
    assert etale_bracket_check(pt, tolerance="float").ok


def test_etale_rejects_off_slice_points():
    pt = sample_constraint_point(2, (0, 1), 0)
    with pytest.raises(ValueError):
        etale_bracket_check(pt)


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=3, unique=True), st.data())
def test_spectral_pair_against_partial_fractions(roots, data):
    # Q/P = sum c_i/(z - x_i) gives b_r = sum c_i x_i^r and a_r = sum x_i^r
    k = len(roots)
    cs = data.draw(st.lists(st.integers(-5, 5), min_size=k, max_size=k))
    a = [sum(Fraction(x) ** r for x in roots) for r in range(1, k + 1)]
    b = [sum(c * Fraction(x) ** r for c, x in zip(cs, roots)) for r in range(2 * k)]
    out = spectral_pair(a, b[:k])
    assert out["ok"]
    assert out["expansion"] == b
    assert spectral_pair(a, b)["recursion_ok"]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_spectral_pair_symbolic(d):
    names = [f"a{r}" for r in range(1, d + 1)] + [f"b{s}" for s in range(d)]
    a = [MultiPoly.var(names, f"a{r}") for r in range(1, d + 1)]
    b = [MultiPoly.var(names, f"b{s}") for s in range(d)]
    out = spectral_pair(a, b)
    assert out["ok"]
    assert out["expansion"][:d] == b


def test_spectral_pair_needs_enough_b():
    with pytest.raises(ValueError):
        spectral_pair([1, 2], [1])


def test_example_relations():
    rep = example_relations()
    entries = rep.to_dict()["entries"]
    conifold = [e for e in entries if e["relation"].startswith("sl3")]
    assert conifold and all(e["status"] == "pass" for e in conifold)
    assert rep.info["affine sl2 validated readings"] == []
    assert rep.info["affine sl2 with + sign in ideal"] is True
