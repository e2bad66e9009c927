"""Chainsaw and handsaw quiver representations as explicit matrices.

Shapes: A_l is d_l x d_l, B_l is d_{l+1} x d_l, p_l is a column of length
d_l (the image of the line W_{l-1}), q_l a row of length d_l. Matrices are
lists of rows over Q (Fractions) or over a prime field F_p (ints mod p).
"""

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from sympy import QQ, GF as SymGF
from sympy.polys.matrices import DomainMatrix

from .scalars import Q, fmt_q


class ShapeError(ValueError):
    pass


def _field(tag):
    if tag == "QQ":
        return None
    if tag.startswith("GF(") and tag.endswith(")"):
        return int(tag[3:-1])
    raise ValueError(f"unknown field tag {tag!r}")


@dataclass(frozen=True)
class ChainsawRep:
    n: int
    d: tuple
    A: tuple
    B: tuple
    p: tuple
    q: tuple
    field: str = "QQ"
    variant: str = "cyclic"

    def __post_init__(self):
        n, d = self.n, tuple(self.d)
        object.__setattr__(self, "d", d)
        if len(d) != n or any(x < 0 for x in d):
            raise ShapeError("bad dimension vector")
        if self.variant not in ("cyclic", "open"):
            raise ShapeError(f"unknown variant {self.variant!r}")
        P = _field(self.field)
        conv = (lambda x: Q(x)) if P is None else (lambda x: int(Q(x).numerator * pow(Q(x).denominator, -1, P)) % P)
        A = tuple(tuple(tuple(conv(x) for x in row) for row in M) for M in self.A)
        B = tuple(tuple(tuple(conv(x) for x in row) for row in M) for M in self.B)
        p = tuple(tuple(conv(x) for x in v) for v in self.p)
        q = tuple(tuple(conv(x) for x in v) for v in self.q)
        B = list(B)
        for l in range(n):
            m = (l + 1) % n
            if (d[l] == 0 or d[m] == 0) and not any(len(r) for r in B[l]):
                B[l] = tuple(() for _ in range(d[m])) if self.has_edge(l) else ()
        B = tuple(B)
        for l in range(n):
            if len(A[l]) != d[l] or any(len(r) != d[l] for r in A[l]):
                raise ShapeError(f"A_{l} must be {d[l]}x{d[l]}")
            if len(p[l]) != d[l] or len(q[l]) != d[l]:
                raise ShapeError(f"p_{l}, q_{l} must have length {d[l]}")
            m = (l + 1) % n
            if self.has_edge(l):
                if len(B[l]) != d[m] or any(len(r) != d[l] for r in B[l]):
                    raise ShapeError(f"B_{l} must be {d[m]}x{d[l]}")
            elif B[l] and any(B[l]):
                raise ShapeError("the open variant has no edge from the last node to the first")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def has_edge(self, l):
        return self.variant == "cyclic" or l < self.n - 1

    @property
    def prime(self):
        return _field(self.field)

    def to_json(self):
        def m(M):
            return [[fmt_q(Fraction(x)) for x in row] for row in M]
        return json.dumps({"n": self.n, "d": list(self.d), "field": self.field, "variant": self.variant,
                           "A": [m(M) for M in self.A], "B": [m(M) for M in self.B],
                           "p": [[fmt_q(Fraction(x)) for x in v] for v in self.p],
                           "q": [[fmt_q(Fraction(x)) for x in v] for v in self.q]}, sort_keys=True)

    @classmethod
    def from_json(cls, s):
        o = json.loads(s) if isinstance(s, str) else s
        return cls(o["n"], tuple(o["d"]), o["A"], o["B"], o["p"], o["q"],
                   o.get("field", "QQ"), o.get("variant", "cyclic"))

    @classmethod
    def zero(cls, n, d, field="QQ", variant="cyclic"):
        d = tuple(d)
        A = [[[0] * d[l] for _ in range(d[l])] for l in range(n)]
        B = []
        for l in range(n):
            if variant == "cyclic" or l < n - 1:
                B.append([[0] * d[l] for _ in range(d[(l + 1) % n])])
            else:
                B.append([])
        return cls(n, d, A, B, [[0] * d[l] for l in range(n)], [[0] * d[l] for l in range(n)], field, variant)


# ---------------------------------------------------------------- arithmetic

class _Ops:
    def __init__(self, prime):
        self.P = prime
        self.dom = QQ if prime is None else SymGF(prime)

    def norm(self, x):
        return Q(x) if self.P is None else int(x) % self.P

    def mul(self, X, Y, rows, inner, cols):
        out = []
        for i in range(rows):
            row = []
            for j in range(cols):
                s = sum((X[i][k] * Y[k][j] for k in range(inner)), 0)
                row.append(self.norm(s))
            out.append(row)
        return out

    def _dm(self, rows, ncols):
        if self.P is None:
            data = [[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows]
        else:
            data = [[self.dom(int(x)) for x in r] for r in rows]
        return DomainMatrix(data, (len(rows), ncols), self.dom)

    def _back(self, x):
        if self.P is None:
            return Fraction(int(x.numerator), int(x.denominator))
        return int(self.dom.to_int(x)) % self.P

    def rank(self, rows, ncols):
        if not rows or not ncols:
            return 0
        return self._dm(rows, ncols).rank()

    def nullspace(self, rows, ncols):
        if ncols == 0:
            return []
        if not rows:
            return [[self.norm(int(i == j)) for j in range(ncols)] for i in range(ncols)]
        R, pivots = self._dm(rows, ncols).rref()
        R = R.to_list()
        free = [c for c in range(ncols) if c not in pivots]
        out = []
        for f in free:
            v = [self.norm(0)] * ncols
            v[f] = self.norm(1)
            for r, c in enumerate(pivots):
                v[c] = self.norm(-self._back(R[r][f]))
            out.append(v)
        return out

    def basis(self, vectors, dim):
        """Row-reduced basis of the span of the given vectors."""
        vectors = [v for v in vectors if any(v)]
        if not vectors:
            return []
        R, pivots = self._dm(vectors, dim).rref()
        R = R.to_list()
        return [[self._back(x) for x in R[r]] for r in range(len(pivots))]


def _ops(rep):
    return _Ops(rep.prime)


# ---------------------------------------------------------------- moment map

def moment_map(rep):
    """(A_{l+1}B_l - B_lA_l + p_{l+1}q_l)_l, one d_{l+1} x d_l matrix per edge."""
    o = _ops(rep)
    n, d = rep.n, rep.d
    out = []
    for l in range(n):
        if not rep.has_edge(l):
            continue
        m = (l + 1) % n
        AB = o.mul(rep.A[m], rep.B[l], d[m], d[m], d[l])
        BA = o.mul(rep.B[l], rep.A[l], d[m], d[l], d[l])
        out.append([[o.norm(AB[i][j] - BA[i][j] + rep.p[m][i] * rep.q[l][j]) for j in range(d[l])]
                    for i in range(d[m])])
    return out


def is_in_zero_fiber(rep):
    return all(x == 0 for M in moment_map(rep) for row in M for x in row)


def moment_cokernel(rep, check=True):
    """Basis of (C_l : V_l -> V_{l-1}) with C_lA_l = A_{l-1}C_l, B_{l-1}C_l = 0,
    C_{l+1}B_l = 0, q_{l-1}C_l = 0, C_lp_l = 0. Nonzero iff d(mu) is not onto.

    Each basis element is a list over l of d_{l-1} x d_l matrices."""
    if check and not is_in_zero_fiber(rep):
        raise ValueError("the representation does not satisfy the moment map equations")
    o = _ops(rep)
    n, d = rep.n, rep.d
    var = {}
    for l in range(n):
        k = (l - 1) % n
        if not rep.has_edge(k):
            continue
        for a in range(d[k]):
            for b in range(d[l]):
                var[(l, a, b)] = len(var)
    N = len(var)
    rows = []

    def C(l, a, b):
        return var.get((l, a, b))

    def add(terms):
        row = [0] * N
        for idx, c in terms:
            if idx is not None:
                row[idx] = o.norm(row[idx] + c)
        if any(row):
            rows.append(row)

    A, B, p, q = rep.A, rep.B, rep.p, rep.q
    for l in range(n):
        k = (l - 1) % n
        if not rep.has_edge(k):
            continue
        # C_l A_l - A_{k} C_l = 0  (d_k x d_l)
        for a in range(d[k]):
            for b in range(d[l]):
                add([(C(l, a, m), A[l][m][b]) for m in range(d[l])]
                    + [(C(l, m, b), -A[k][a][m]) for m in range(d[k])])
        # B_{k} C_l = 0  (d_l x d_l)
        if rep.has_edge(k):
            for a in range(d[l]):
                for b in range(d[l]):
                    add([(C(l, m, b), B[k][a][m]) for m in range(d[k])])
        # q_{k} C_l = 0  (1 x d_l)
        for b in range(d[l]):
            add([(C(l, m, b), q[k][m]) for m in range(d[k])])
        # C_l p_l = 0  (d_k x 1)
        for a in range(d[k]):
            add([(C(l, a, m), p[l][m]) for m in range(d[l])])
    for l in range(n):
        m1 = (l + 1) % n
        if not rep.has_edge(l):
            continue
        # C_{l+1} B_l = 0  (d_l x d_l); C_{l+1}: V_{l+1} -> V_l
        for a in range(d[l]):
            for b in range(d[l]):
                add([(C(m1, a, m), B[l][m][b]) for m in range(d[m1])])
    sols = o.nullspace(rows, N)
    out = []
    for v in sols:
        mats = []
        for l in range(n):
            k = (l - 1) % n
            mats.append([[v[var[(l, a, b)]] if (l, a, b) in var else 0 for b in range(d[l])]
                         for a in range(d[k])])
        out.append(mats)
    return out


# ---------------------------------------------------------------- stability

def _apply(o, M, v, rows, cols):
    return [o.norm(sum((M[i][j] * v[j] for j in range(cols)), 0)) for i in range(rows)]


def stable_costable(rep):
    """(stable, costable) by exact Krylov closure and kernel iteration."""
    o = _ops(rep)
    n, d = rep.n, rep.d
    # smallest graded A,B-invariant subspace containing im p
    span = [o.basis([list(rep.p[l])], d[l]) for l in range(n)]
    changed = True
    while changed:
        changed = False
        for l in range(n):
            new = [_apply(o, rep.A[l], v, d[l], d[l]) for v in span[l]]
            nb = o.basis(span[l] + new, d[l])
            if len(nb) > len(span[l]):
                span[l], changed = nb, True
            if rep.has_edge(l):
                m = (l + 1) % n
                new = [_apply(o, rep.B[l], v, d[m], d[l]) for v in span[l]]
                nb = o.basis(span[m] + new, d[m])
                if len(nb) > len(span[m]):
                    span[m], changed = nb, True
    stable = all(len(span[l]) == d[l] for l in range(n))
    # largest graded invariant subspace inside ker q, via annihilators
    ann = [o.basis([list(rep.q[l])], d[l]) for l in range(n)]
    changed = True
    while changed:
        changed = False
        for l in range(n):
            new = [[o.norm(sum((r[i] * rep.A[l][i][j] for i in range(d[l])), 0)) for j in range(d[l])]
                   for r in ann[l]]
            if rep.has_edge(l):
                m = (l + 1) % n
                new += [[o.norm(sum((r[i] * rep.B[l][i][j] for i in range(d[m])), 0)) for j in range(d[l])]
                        for r in ann[m]]
            nb = o.basis(ann[l] + new, d[l])
            if len(nb) > len(ann[l]):
                ann[l], changed = nb, True
    costable = all(len(ann[l]) == d[l] for l in range(n))
    return stable, costable


def _subspaces(P, dim):
    """All subspaces of F_p^dim, as frozensets of vectors."""
    vecs = list(product(range(P), repeat=dim))
    seen = {frozenset([tuple([0] * dim)])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for S in frontier:
            for v in vecs:
                if v in S:
                    continue
                T = set(S)
                for s in S:
                    for c in range(1, P):
                        T.add(tuple((a + c * b) % P for a, b in zip(s, v)))
                T = frozenset(T)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted(seen, key=lambda S: (len(S), sorted(S)))


def stable_costable_bruteforce(rep):
    """Exhaustive search over all graded subspaces; finite fields only."""
    P = rep.prime
    if P is None:
        raise ValueError("brute force needs a finite field")
    o = _ops(rep)
    n, d = rep.n, rep.d
    subs = [_subspaces(P, d[l]) for l in range(n)]

    def invariant(S):
        for l in range(n):
            for v in S[l]:
                if tuple(_apply(o, rep.A[l], v, d[l], d[l])) not in S[l]:
                    return False
                if rep.has_edge(l):
                    m = (l + 1) % n
                    if tuple(_apply(o, rep.B[l], v, d[m], d[l])) not in S[m]:
                        return False
        return True

    stable, costable = True, True
    full = [len(s[-1]) for s in subs]
    for S in product(*subs):
        proper = any(len(S[l]) < full[l] for l in range(n))
        nonzero = any(len(S[l]) > 1 for l in range(n))
        if not (proper or nonzero):
            continue
        if not invariant(S):
            continue
        if proper and all(tuple(rep.p[l]) in S[l] for l in range(n)):
            stable = False
        if nonzero and all(sum(a * b for a, b in zip(rep.q[l], v)) % P == 0 for l in range(n) for v in S[l]):
            costable = False
    return stable, costable


def random_rep(n, d, seed=0, field="GF(2)", variant="cyclic"):
    rng = random.Random(seed)
    P = _field(field)

    def r():
        return rng.randrange(P) if P else Fraction(rng.randint(-3, 3))
    d = tuple(d)
    A = [[[r() for _ in range(d[l])] for _ in range(d[l])] for l in range(n)]
    B = [[[r() for _ in range(d[l])] for _ in range(d[(l + 1) % n])] if (variant == "cyclic" or l < n - 1) else []
         for l in range(n)]
    p = [[r() for _ in range(d[l])] for l in range(n)]
    q = [[r() for _ in range(d[l])] for l in range(n)]
    return ChainsawRep(n, d, A, B, p, q, field, variant)


def sample_smooth_point(n, d, seed=0):
    """Random rep in the zero fiber with pairwise distinct spectra across nodes:
    A_l diagonal, p, q random, B_l solved from A_{l+1}B_l - B_lA_l = -p_{l+1}q_l."""
    from .poisson import solve_sylvester
    rng = random.Random(seed)
    d = tuple(d)
    used = set()
    A = []
    for l in range(n):
        diag = []
        while len(diag) < d[l]:
            x = Fraction(rng.randint(-50, 50), rng.randint(1, 5))
            if x not in used:
                used.add(x)
                diag.append(x)
        A.append([[diag[i] if i == j else Fraction(0) for j in range(d[l])] for i in range(d[l])])
    p = [[Fraction(rng.randint(1, 9)) * rng.choice((1, -1)) for _ in range(d[l])] for l in range(n)]
    q = [[Fraction(rng.randint(1, 9)) * rng.choice((1, -1)) for _ in range(d[l])] for l in range(n)]
    B = []
    for l in range(n):
        m = (l + 1) % n
        negA = [[-x for x in row] for row in A[l]]
        rhs = [[-p[m][a] * q[l][b] for b in range(d[l])] for a in range(d[m])]
        X = solve_sylvester(negA, A[m], rhs, d[m], d[l])
        if X is None:
            raise ArithmeticError("spectra are not disjoint")
        B.append(X)
    return ChainsawRep(n, d, A, B, p, q)


# ---------------------------------------------------------------- walls and slopes

@dataclass(frozen=True)
class StabilityParam:
    zeta: tuple
    d: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "zeta", tuple(Q(x) for x in self.zeta))
        if self.d is not None:
            object.__setattr__(self, "d", tuple(int(x) for x in self.d))
            if len(self.d) != len(self.zeta):
                raise ValueError("zeta and d differ in length")

    @property
    def zeta_inf(self):
        if self.d is None:
            raise ValueError("zeta_infinity needs a dimension vector")
        return -sum(z * x for z, x in zip(self.zeta, self.d))


def cyclic_intervals(n):
    """All cyclic intervals [l, l'] as tuples of nodes, excluding the full circle."""
    out = []
    for l in range(n):
        for length in range(1, n):
            out.append(tuple((l + k) % n for k in range(length)))
    return out


def finite_intervals(n):
    return [tuple(range(l, lp + 1)) for l in range(1, n) for lp in range(l, n)]


def wall_membership(zeta, mode="affine"):
    """Walls containing zeta: cyclic-interval hyperplanes plus H (affine), or
    linear intervals inside 1..n-1 (finite; zeta_0 is ignored)."""
    z = zeta.zeta if isinstance(zeta, StabilityParam) else tuple(Q(x) for x in zeta)
    n = len(z)
    hits = []
    if mode == "affine":
        for I in cyclic_intervals(n):
            if sum(z[k] for k in I) == 0:
                hits.append({"wall": "H_interval", "interval": [I[0], I[-1]], "nodes": list(I)})
        if sum(z) == 0:
            hits.append({"wall": "H", "nodes": list(range(n))})
    elif mode == "finite":
        for I in finite_intervals(n):
            if sum(z[k] for k in I) == 0:
                hits.append({"wall": "H_interval", "interval": [I[0], I[-1]], "nodes": list(I)})
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return hits


def slope(zeta, dims, d_inf):
    """<zeta~, (d', d_inf')> / <(1,...,1), (d', d_inf')>."""
    if not isinstance(zeta, StabilityParam):
        raise TypeError("slope needs a StabilityParam with its dimension vector")
    dims = [int(x) for x in dims]
    den = sum(dims) + d_inf
    if den == 0:
        raise ValueError("enhanced dimension is zero")
    num = sum(z * x for z, x in zip(zeta.zeta, dims)) + (zeta.zeta_inf * d_inf if d_inf else 0)
    return Fraction(num) / den


@dataclass(frozen=True)
class SpecialModule:
    kind: str  # "L_l" | "L" | "Y_interval"
    l: int = 0
    lp: int = 0
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in ("L_l", "L", "Y_interval"):
            raise ValueError(f"unknown special module {self.kind!r}")
        if self.kind == "L" and Q(self.y) == 0:
            raise ValueError("L(x, y) requires y != 0")

    def nodes(self, n):
        if self.kind == "L_l":
            return [self.l % n]
        if self.kind == "L":
            return list(range(n))
        length = (self.lp - self.l) % n + 1
        return [(self.l + k) % n for k in range(length)]

    def dims(self, n):
        v = [0] * n
        for k in self.nodes(n):
            v[k] += 1
        return v


def _interval_check(z, nodes, strict):
    total = sum(z[k] for k in nodes)
    if total != 0:
        return "unstable"
    partial = Fraction(0)
    borderline = False
    for k in nodes[:-1]:
        partial += z[k]
        if partial < 0:
            return "unstable"
        if partial == 0:
            borderline = True
    if borderline and strict:
        return "strictly-semistable"
    return "stable"


def _interval_bruteforce(z, nodes):
    """Submodules of Y_[l,l'] are the tails Y_[l'',l']; stability of a module
    with W_inf = 0 requires slope zero and negative slope on proper tails."""
    total = sum(z[k] for k in nodes)
    if total != 0:
        return "unstable"
    worst = None
    for start in range(1, len(nodes)):
        tail = nodes[start:]
        s = Fraction(sum(z[k] for k in tail), len(tail))
        worst = s if worst is None else max(worst, s)
    if worst is None or worst < 0:
        return "stable"
    if worst == 0:
        return "strictly-semistable"
    return "unstable"


def special_module_stability(zeta, module, n=None, reading="strict", finite=False):
    """stable | strictly-semistable | unstable for the modules L_l(x), L(x,y)
    and Y_[l,l'] (nilpotent indecomposable of the cyclic quiver).

    For Y_[l,l'] the partial sums over proper sub-intervals are compared with
    zero strictly ("strict", agrees with the submodule slope comparison) or
    as written with >= ("as-written")."""
    z = zeta.zeta if isinstance(zeta, StabilityParam) else tuple(Q(x) for x in zeta)
    n = len(z) if n is None else n
    if module.kind == "L_l":
        return "stable" if z[module.l % n] == 0 else "unstable"
    if module.kind == "L":
        return "stable" if sum(z) == 0 else "unstable"
    if finite and not (0 < module.l <= module.lp < n):
        raise ValueError("finite mode only has intervals inside 1..n-1")
    if not (0 <= module.l < n and 0 <= module.lp < n):
        raise ValueError("invalid interval")
    nodes = module.nodes(n)
    if reading == "bruteforce":
        return _interval_bruteforce(z, nodes)
    if reading not in ("strict", "as-written"):
        raise ValueError(f"unknown reading {reading!r}")
    return _interval_check(z, nodes, strict=(reading == "strict"))


def compare_interval_readings(n, values=(-2, -1, 0, 1, 2)):
    """Compare both readings of the Y_[l,l'] criterion with brute force on a grid of zeta."""
    out = {"n": n, "cases": 0, "strict_disagree": 0, "as_written_disagree": 0, "examples": []}
    for z in product(values, repeat=n):
        z = tuple(Fraction(x) for x in z)
        for l in range(n):
            for lp in range(n):
                mod = SpecialModule("Y_interval", l, lp)
                bf = special_module_stability(z, mod, reading="bruteforce")
                st = special_module_stability(z, mod, reading="strict")
                aw = special_module_stability(z, mod, reading="as-written")
                out["cases"] += 1
                if st != bf:
                    out["strict_disagree"] += 1
                if (aw == "stable") != (bf == "stable"):
                    out["as_written_disagree"] += 1
                    if len(out["examples"]) < 3:
                        out["examples"].append({"zeta": [int(x) for x in z], "interval": [l, lp],
                                                "as_written": aw, "bruteforce": bf})
    return out


# ---------------------------------------------------------------- collapse

def collapse_to_single_node(rep):
    """(A', B', p', q') over V' = V_0, W' = W_0 + ... + W_{n-1}:
    A' = A_0, B' = B_{n-1}...B_0, p' block l = B_{n-1}...B_l p_l (p_0 for l = 0),
    q' block l = q_l B_{l-1}...B_0 (q_0 for l = 0)."""
    if rep.variant != "cyclic":
        raise ValueError("collapse needs the cyclic variant")
    o = _ops(rep)
    n, d = rep.n, rep.d
    d0 = d[0]

    def chain(start, stop):
        """B_{stop-1} ... B_start as a d_{stop} x d_start matrix (stop taken mod n)."""
        M = [[o.norm(int(i == j)) for j in range(d[start % n])] for i in range(d[start % n])]
        for k in range(start, stop):
            src, dst = k % n, (k + 1) % n
            M = o.mul(rep.B[src], M, d[dst], d[src], d[start % n])
        return M

    Bp = chain(0, n)
    pp = []
    for l in range(n):
        col = [[x] for x in rep.p[l]]
        C = chain(l, n) if l else [[o.norm(int(i == j)) for j in range(d0)] for i in range(d0)]
        pp.append([row[0] for row in o.mul(C, col, d0, d[l], 1)])
    qq = []
    for l in range(n):
        C = chain(0, l)
        qq.append(o.mul([list(rep.q[l])], C, 1, d[l], d0)[0])
    return {"A": [list(r) for r in rep.A[0]], "B": Bp, "p_blocks": pp, "q_blocks": qq}


# ---------------------------------------------------------------- strata

def _partitions(k, largest=None):
    if k == 0:
        return [()]
    largest = k if largest is None else largest
    out = []
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            out.append((first,) + rest)
    return out


def strata_enumerate(n, d, variant="cyclic"):
    """Combinatorial types R + sum L(x_i,y_i)^{m_i} + sum L_l(x_j)^{m_lj}."""
    d = tuple(int(x) for x in d)
    out = []
    cyc_max = min(d) if (variant == "cyclic" and n > 0) else 0
    for u in range(cyc_max + 1):
        for ms in _partitions(u):
            rest = [x - u for x in d]
            for dprime in product(*[range(x + 1) for x in rest]):
                per = [_partitions(r - dp) for r, dp in zip(rest, dprime)]
                for choice in product(*per):
                    out.append({"d_prime": list(dprime), "uniform": list(ms),
                                "per_node": {str(l): list(choice[l]) for l in range(n) if choice[l]},
                                "parameters": {"pairs": len(ms),
                                               "points": {str(l): len(choice[l]) for l in range(n) if choice[l]}}})
    return out


# ---------------------------------------------------------------- dimension bound

def dual_partition(part):
    part = [x for x in part if x]
    return tuple(sum(1 for x in part if x > i) for i in range(part[0])) if part else ()


def dimension_bound_check(d, kappas, variant="cyclic"):
    """lhs = sum (d_l^2 - sum_i kappa_i^2) + sum_{l,i,j} min(ϰ^l_i, ϰ^{l+1}_j)
    + sum_l max(d_l, d_{l+1}); rhs = sum (d_l^2 + d_l). ϰ^l are Jordan types,
    kappa their duals."""
    d = tuple(int(x) for x in d)
    n = len(d)
    parts = [tuple(int(x) for x in k) for k in kappas]
    if len(parts) != n:
        raise ValueError("one partition per node is needed")
    for l in range(n):
        if sum(parts[l]) != d[l] or any(x <= 0 for x in parts[l]) or list(parts[l]) != sorted(parts[l], reverse=True):
            raise ValueError(f"{parts[l]} is not a partition of {d[l]}")
    lhs = 0
    for l in range(n):
        lhs += d[l] ** 2 - sum(k * k for k in dual_partition(parts[l]))
    edges = range(n) if variant == "cyclic" else range(n - 1)
    for l in edges:
        m = (l + 1) % n
        lhs += sum(min(a, b) for a in parts[l] for b in parts[m])
        lhs += max(d[l], d[m])
    rhs = sum(x * x + x for x in d)
    return lhs, rhs, lhs <= rhs


def dimension_bound_batch(d, variant="cyclic"):
    worst = None
    count = 0
    for kap in product(*[_partitions(x) for x in d]):
        lhs, rhs, ok = dimension_bound_check(d, kap, variant)
        count += 1
        if not ok:
            return {"holds": False, "counterexample": [list(k) for k in kap], "lhs": lhs, "rhs": rhs}
        worst = lhs - rhs if worst is None else max(worst, lhs - rhs)
    return {"holds": True, "count": count, "max_lhs_minus_rhs": worst}


# ---------------------------------------------------------------- the smoothness example

def smoothness_example():
    """n=3, d=(0,1,1), A_1=A_2=p_1=q_2=1, B_1=p_2=q_1=0, zeta=(-1,2)."""
    rep = ChainsawRep(3, (0, 1, 1), [[], [[1]], [[1]]], [[], [[0]], []],
                      [[], [1], [0]], [[], [0], [1]])
    mm = moment_map(rep)
    ker = moment_cokernel(rep)
    zeta = StabilityParam((0, -1, 2), (0, 1, 1))
    st, co = stable_costable(rep)
    return {"moment_zero": all(x == 0 for M in mm for row in M for x in row),
            "cokernel_dim": len(ker),
            "cokernel": [[[[fmt_q(Fraction(x)) for x in row] for row in M] for M in sol] for sol in ker],
            "walls_hit": wall_membership(zeta, "finite"),
            "stable": st, "costable": co}
