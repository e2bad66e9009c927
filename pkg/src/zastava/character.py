"""Character of the coordinate ring of the Zastava space by Molien-Weyl.

S is the character of the symmetric algebra on A, B, p, q; Lambda is the
Koszul factor of the equations A_{l+1}B_l - B_lA_l + p_{l+1}q_l. The invariant
part of S*Lambda is extracted by the Weyl constant term of every GL(V_l).

Series are truncated by PBW degree: each coordinate has degree 1 and each
equation degree 2. On G-invariants this degree is a function of the
(t, u, v)-weight, so the truncation is compatible with the torus grading.
"""

import json
from math import factorial
from typing import NamedTuple


class Factor(NamedTuple):
    """One factor (1 - x)^{-1} (kind 'S') or (1 - x) (kind 'L') of weight x.
    tuv = exponents of t_0..t_{n-1}, u, v; st = exponents of st_{l,i}."""
    kind: str
    label: str
    tuv: tuple
    st: tuple
    degree: int


def _slots(d):
    return [(l, i) for l in range(len(d)) for i in range(1, d[l] + 1)]


def weight_tables(n, d):
    """Factor lists (S, Lambda)."""
    d = tuple(int(x) for x in d)
    if len(d) != n:
        raise ValueError("dimension vector length differs from n")
    slots = _slots(d)
    pos = {s: k for k, s in enumerate(slots)}
    U, V = n, n + 1

    def weight(t_u_v, st_terms):
        tuv = [0] * (n + 2)
        for k, e in t_u_v:
            tuv[k] += e
        st = [0] * len(slots)
        for s, e in st_terms:
            st[pos[s]] += e
        return tuple(tuv), tuple(st)

    S, L = [], []
    for l in range(n):
        m = (l + 1) % n
        for i in range(1, d[l] + 1):
            for j in range(1, d[l] + 1):
                S.append(Factor("S", f"A_{l}^({i}{j})", *weight([(V, 1)], [((l, i), 1), ((l, j), -1)]), 1))
        for i in range(1, d[l] + 1):
            for j in range(1, d[m] + 1):
                S.append(Factor("S", f"B_{l}^({i}{j})",
                                *weight([(U, int(l == 0))], [((l, i), 1), ((m, j), -1)]), 1))
        for i in range(1, d[l] + 1):
            S.append(Factor("S", f"p_{l}^({i})",
                            *weight([(U, int(l == 1 % n)), (V, 1), ((l - 1) % n, 1)], [((l, i), -1)]), 1))
        for i in range(1, d[l] + 1):
            S.append(Factor("S", f"q_{l}^({i})", *weight([(l, -1)], [((l, i), 1)]), 1))
        for i in range(1, d[l] + 1):
            for j in range(1, d[m] + 1):
                L.append(Factor("L", f"E_{l}^({i}{j})",
                                *weight([(U, int(l == 0)), (V, 1)], [((l, i), 1), ((m, j), -1)]), 2))
    return S, L


class CharacterSeries:
    """Truncated series {(t_0..t_{n-1}, u, v): coefficient} up to PBW degree N."""

    def __init__(self, n, coeffs, N, degrees=None):
        self.n = n
        self.coeffs = {k: v for k, v in coeffs.items() if v}
        self.N = N
        self.degrees = dict(degrees or {})

    def __getitem__(self, key):
        return self.coeffs.get(tuple(key), 0)

    def constant_term(self):
        return self[(0,) * (self.n + 2)]

    def nonnegative(self):
        return all(v >= 0 and v == int(v) for v in self.coeffs.values())

    def restrict(self, N):
        return CharacterSeries(self.n, {k: v for k, v in self.coeffs.items() if self.degrees.get(k, 0) <= N},
                               N, {k: g for k, g in self.degrees.items() if g <= N})

    def by_degree(self):
        out = {}
        for k, v in self.coeffs.items():
            g = self.degrees.get(k)
            out[g] = out.get(g, 0) + v
        return dict(sorted(out.items()))

    def __eq__(self, other):
        return isinstance(other, CharacterSeries) and self.n == other.n and self.coeffs == other.coeffs

    def to_json(self):
        items = sorted(self.coeffs.items())
        return json.dumps({"n": self.n, "N": self.N,
                           "coefficients": [{"t": list(k[:self.n]), "u": k[self.n], "v": k[self.n + 1],
                                             "coeff": int(v)} for k, v in items]}, sort_keys=True)

    def __repr__(self):
        return f"CharacterSeries(n={self.n}, N={self.N}, {len(self.coeffs)} terms)"


def _mul_trunc(series, factor, N):
    """Multiply a dict {(deg, tuv, st): c} by a factor, truncating at degree N."""
    out = dict(series)
    g = factor.degree
    if factor.kind == "L":
        for (deg, tuv, st), c in series.items():
            if deg + g > N:
                continue
            key = (deg + g, tuple(a + b for a, b in zip(tuv, factor.tuv)),
                   tuple(a + b for a, b in zip(st, factor.st)))
            out[key] = out.get(key, 0) - c
        return {k: v for k, v in out.items() if v}
    out = {}
    for (deg, tuv, st), c in series.items():
        k = 0
        while deg + k * g <= N:
            key = (deg + k * g, tuple(a + k * b for a, b in zip(tuv, factor.tuv)),
                   tuple(a + k * b for a, b in zip(st, factor.st)))
            out[key] = out.get(key, 0) + c
            k += 1
    return out


def _weyl_factor(d):
    """prod_l prod_{i != j} (1 - st_{l,i}/st_{l,j}) as {st exponent: coeff}."""
    slots = _slots(d)
    pos = {s: k for k, s in enumerate(slots)}
    poly = {tuple([0] * len(slots)): 1}
    for l in range(len(d)):
        for i in range(1, d[l] + 1):
            for j in range(1, d[l] + 1):
                if i == j:
                    continue
                e = [0] * len(slots)
                e[pos[(l, i)]] += 1
                e[pos[(l, j)]] -= 1
                new = dict(poly)
                for k, c in poly.items():
                    kk = tuple(a + b for a, b in zip(k, e))
                    new[kk] = new.get(kk, 0) - c
                poly = {k: v for k, v in new.items() if v}
    return poly


def molien_weyl_character(n, d, N=4):
    """F_d through PBW degree N as a CharacterSeries."""
    d = tuple(int(x) for x in d)
    S, L = weight_tables(n, d)
    nst = sum(d)
    series = {(0, (0,) * (n + 2), (0,) * nst): 1}
    for f in S + L:
        series = _mul_trunc(series, f, N)
    weyl = _weyl_factor(d)
    order = 1
    for x in d:
        order *= factorial(x)
    zero = (0,) * nst
    inv = {}
    degrees = {}
    for (deg, tuv, st), c in series.items():
        # constant term of series * weyl needs st + w = 0
        w = tuple(-x for x in st)
        cw = weyl.get(w)
        if cw:
            inv[tuv] = inv.get(tuv, 0) + c * cw
            degrees[tuv] = deg
    out = {}
    for k, v in inv.items():
        if v % order:
            raise ArithmeticError(f"non-integral invariant coefficient at {k}")
        out[k] = v // order
    return CharacterSeries(n, out, N, {k: degrees[k] for k in out})


def pbw_degree(n, key):
    """Degree of an invariant monomial of weight (t, u, v)."""
    alpha = [-1] + [n - l - 1 for l in range(1, n)]
    t, u, v = key[:n], key[n], key[n + 1]
    return n * u + v + sum(a * x for a, x in zip(alpha, t))


def sl2_closed_form_oracle(d, N=6, n=2, node=None):
    """prod_{m=1}^d (1 - v^m)^{-1} prod_{m=0}^{d-1} (1 - u^{[l=1]} v^{m+1} t_{l-1} t_l^{-1})^{-1}
    for a single active node l (default the last one), through PBW degree N."""
    l = n - 1 if node is None else node
    gens = []
    for m in range(1, d + 1):
        tuv = [0] * (n + 2)
        tuv[n + 1] = m
        gens.append(tuple(tuv))
    for m in range(d):
        tuv = [0] * (n + 2)
        tuv[n] += int(l == 1 % n)
        tuv[n + 1] += m + 1
        tuv[(l - 1) % n] += 1
        tuv[l] -= 1
        gens.append(tuple(tuv))
    series = {(0,) * (n + 2): 1}
    for g in gens:
        gd = pbw_degree(n, g)
        out = {}
        for key, c in series.items():
            k = 0
            while True:
                kk = tuple(a + k * b for a, b in zip(key, g))
                if pbw_degree(n, kk) > N:
                    break
                out[kk] = out.get(kk, 0) + c
                k += 1
                if gd <= 0:
                    raise ValueError("generator of nonpositive degree")
        series = out
    return CharacterSeries(n, series, N, {k: pbw_degree(n, k) for k in series})


def compare_with_Y(n, d, N=4, mu=None):
    """Compare F_d with the graded dimensions of the quantized algebra."""
    from .uea import graded_character_Y
    F = molien_weyl_character(n, d, N)
    Y = graded_character_Y(n, d, mu, N)["by_weight"]
    keys = sorted(set(F.coeffs) | set(Y))
    diff = {k: (F[k], Y.get(k, 0)) for k in keys if F[k] != Y.get(k, 0)}
    return {"equal": not diff, "differences": diff, "terms": len(keys)}
