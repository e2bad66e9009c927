"""Exact linear algebra over Q on top of sympy's DomainMatrix."""

import heapq
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _qq(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _frac(x):
    return Fraction(int(x.numerator), int(x.denominator))


def to_domain(rows, ncols=None):
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix([[_qq(v) for v in r] for r in rows], (len(rows), ncols), QQ)


def rank(rows):
    if not rows:
        return 0
    return to_domain(rows).rank()


def nullspace(rows, ncols):
    """Basis of {x : rows . x = 0} as lists of Fractions (rref-normalized)."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    M = to_domain(rows, ncols)
    ns = M.nullspace().to_Matrix()
    out = []
    for i in range(ns.rows):
        v = [Fraction(int(ns[i, j].p), int(ns[i, j].q)) for j in range(ncols)]
        out.append(v)
    return out


def solve(rows, rhs):
    """One solution of rows . x = rhs, or None if inconsistent."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        return []
    R, pivots = to_domain(aug, n + 1).rref()
    if n in pivots:
        return None
    R = R.to_Matrix()
    x = [Fraction(0)] * n
    for row, c in enumerate(pivots):
        v = R[row, n]
        x[c] = Fraction(int(v.p), int(v.q))
    return x


class _Neg:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return other.k < self.k


class SparseSpan:
    """Incremental row-echelon span of sparse vectors {key: Fraction}.

    `reduce` returns the residue of a vector modulo the span together with
    the combination of inserted generators that was subtracted, which gives
    membership certificates."""

    def __init__(self):
        self.rows = {}  # pivot key -> (vector, combination)
        self.count = 0

    def _reduce(self, vec, comb):
        # every stored row has its pivot as its largest key, so one sweep
        # over the keys in decreasing order suffices
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        comb = dict(comb)
        heap = [_Neg(k) for k in vec]
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap).k
            if k in seen:
                continue
            seen.add(k)
            c = vec.get(k)
            if not c or k not in self.rows:
                continue
            rv, rc = self.rows[k]
            for kk, vv in rv.items():
                s = vec.get(kk, 0) - c * vv
                if s:
                    if kk not in vec:
                        heapq.heappush(heap, _Neg(kk))
                    vec[kk] = s
                else:
                    vec.pop(kk, None)
            for kk, vv in rc.items():
                s = comb.get(kk, 0) - c * vv
                if s:
                    comb[kk] = s
                else:
                    comb.pop(kk, None)
        return vec, comb

    def add(self, vec, label=None):
        """Insert a generator; returns True if it enlarged the span."""
        label = self.count if label is None else label
        self.count += 1
        v, c = self._reduce(vec, {label: Fraction(1)})
        if not v:
            return False
        k = max(v)
        inv = 1 / v[k]
        self.rows[k] = ({kk: vv * inv for kk, vv in v.items()}, {kk: vv * inv for kk, vv in c.items()})
        return True

    def reduce(self, vec):
        v, c = self._reduce(vec, {})
        return v, {k: -x for k, x in c.items()}

    def __len__(self):
        return len(self.rows)
