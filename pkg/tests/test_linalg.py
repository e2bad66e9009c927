from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from zastava.linalg import SparseSpan, nullspace, rank, solve

entries = st.integers(-4, 4).map(Fraction)
matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=1, max_size=4))


@given(matrices)
def test_rank_matches_sympy(M):
    assert rank(M) == sympy.Matrix(M).rank()


@given(matrices)
def test_nullspace_is_a_kernel_basis(M):
    ns = nullspace(M, len(M[0]))
    assert len(ns) == len(M[0]) - rank(M)
    for v in ns:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)


@given(matrices, st.data())
def test_solve_consistent_systems(M, data):
    x0 = data.draw(st.lists(entries, min_size=len(M[0]), max_size=len(M[0])))
    rhs = [sum(a * b for a, b in zip(row, x0)) for row in M]
    x = solve(M, rhs)
    assert [sum(a * b for a, b in zip(row, x)) for row in M] == rhs


def test_solve_detects_inconsistency():
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


@given(st.lists(st.dictionaries(st.integers(0, 5), entries, max_size=4), max_size=6))
def test_sparse_span_certificates(vecs):
    span = SparseSpan()
    for k, v in enumerate(vecs):
        span.add(v, label=k)
    rows = [[v.get(i, Fraction(0)) for i in range(6)] for v in vecs]
    assert len(span) == (rank(rows) if rows else 0)
    for v in vecs:
        res, comb = span.reduce(v)
        assert not res
        total = {}
        for lab, c in comb.items():
            for i, x in vecs[lab].items():
                total[i] = total.get(i, 0) + c * x
        assert {i: x for i, x in total.items() if x} == {i: x for i, x in v.items() if x}
