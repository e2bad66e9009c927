from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zastava.lie import build_chainsaw_lie
from zastava.uea import (UEAElement, capelli_oracle, commutator, d1_oracle, free_word_normal_form,
                         ideal_membership, invariance_check, pbw_normal_form, quantum_generator,
                         reduce_mod_diag, verify_quantum_relations)

ALG = build_chainsaw_lie(2, (1, 1), "diag")
N = len(ALG.basis)
words = st.lists(st.integers(0, N - 1), max_size=4).map(tuple)


@given(words)
def test_normal_form_matches_free_word_oracle(w):
    assert pbw_normal_form(ALG, w).terms == free_word_normal_form(ALG, {w: Fraction(1)})


@given(words, words, words)
def test_associativity(u, v, w):
    x, y, z = (pbw_normal_form(ALG, t) for t in (u, v, w))
    assert (x * y) * z == x * (y * z)


@given(words, words)
def test_commutator_drops_the_symbol_degree(u, v):
    x, y = pbw_normal_form(ALG, u), pbw_normal_form(ALG, v)
    c = commutator(x, y)
    assert c.degree() <= len(u) + len(v) - 1
    assert (x * y).top_symbol() == (y * x).top_symbol()


@given(words, st.fractions(min_value=-5, max_value=5, max_denominator=7))
def test_json_roundtrip(w, c):
    x = pbw_normal_form(ALG, w, c) + 1
    assert UEAElement.from_json(ALG, x.to_json()) == x


def test_letter_commutator_is_the_lie_bracket():
    for a in range(N):
        for b in range(N):
            x, y = UEAElement(ALG, {(a,): 1}), UEAElement(ALG, {(b,): 1})
            want = UEAElement(ALG, {(k,): c for k, c in ALG.bracket_basis(a, b).items()})
            assert commutator(x, y) == want


def test_mixing_algebras_is_an_error():
    other = build_chainsaw_lie(2, (0, 1), "diag")
    with pytest.raises(ValueError):
        UEAElement.scalar(ALG, 1) + UEAElement.scalar(other, 1)


def test_d1_oracle():
    rep = d1_oracle()
    assert rep.ok and len(rep.entries) == 2


@pytest.mark.parametrize("d", [1, 2])
def test_single_node_quantum_relations(d):
    rep = verify_quantum_relations(2, (0, d), max_index=2)
    assert rep.ok
    # the r = 0 instances use the normalization a_0 = d
    assert any(e["relation"] == "ab" and e["instance"]["r"] == 0 for e in rep.entries)
    alg = build_chainsaw_lie(2, (0, d), "diag")
    assert quantum_generator(alg, "a", 1, (0,)).as_scalar() == d


def test_diag_reduction_removes_g_letters():
    alg = build_chainsaw_lie(2, (0, 2), "diag")
    g = UEAElement.letter(alg, "g_1_1_1")
    x = UEAElement.letter(alg, "p_1_1") * g
    red = reduce_mod_diag(x, (0, 3))
    assert all(alg.basis[k].tag != "G" for w in red.terms for k in w)
    assert red == UEAElement.letter(alg, "p_1_1").scale(3)
    assert reduce_mod_diag(x, (0, 0)).is_zero()


def test_ideal_membership_certificate():
    alg = build_chainsaw_lie(3, (0, 1, 1), "diag")
    b = quantum_generator(alg, "b", 1, (0,))
    ok, cert = ideal_membership(reduce_mod_diag(commutator(b, b)))
    assert ok
    ok, cert = ideal_membership(reduce_mod_diag(b))
    assert not ok and cert["N"] >= 2


def test_invariance_check_agrees():
    alg = build_chainsaw_lie(2, (0, 2), "diag")
    for kind, idx in (("a", (2,)), ("b", (1,))):
        out = invariance_check(quantum_generator(alg, kind, 1, idx))
        assert out["pre"] and out["post"] and out["agree"]
    out = invariance_check(UEAElement.letter(alg, "p_1_1"))
    assert out["agree"] and not out["pre"]


def test_capelli_normalizations():
    assert len(capelli_oracle(1).info["validated"]) == 16
    assert len(capelli_oracle(2).info["validated"]) == 4
