"""Classical Hamiltonian reduction of the chainsaw Lie algebra.

Elements of S(a) are MultiPolys whose variables are the basis names of a
ChainsawLie. Matrices in coordinates are transposes of the geometric ones:
e_{l,ij} = (A_l)_{ji}, e'_{l,ij} = (A'_l)_{ji}, f_{l,ij} = (B_l)_{ji}, so
b_{l,s} = <q_l, A_l^s p_l> reads p^T E^s q with p, q as plain vectors.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .cartan import CartanMatrix
from .ideal import GroebnerIdeal
from .lie import LieBasisIndex, _mu_vector, build_chainsaw_lie
from .linalg import solve
from .poly import MultiPoly
from .report import Report
from .scalars import Q, fmt_q
from .series import TruncSeries


class RangeError(ValueError):
    pass


class SizeLimitError(ValueError):
    pass


class SpectralClash(ValueError):
    pass


# ---------------------------------------------------------------- elements

def sym_var(alg, name):
    return MultiPoly.var(alg.names, name)


def sym_const(alg, c):
    return MultiPoly.constant(alg.names, c)


def _check_vars(alg, f):
    known = set(alg.names)
    bad = [v for v in f.support_vars() if v not in known]
    if bad:
        raise ValueError(f"element uses letters outside {alg!r}: {bad}")


def lie_poisson_bracket(alg, f, g):
    """{f, g} = sum over letters x, y of df/dx dg/dy [x, y]."""
    _check_vars(alg, f)
    _check_vars(alg, g)
    f = f.with_variables(alg.names)
    g = g.with_variables(alg.names)
    names = alg.names
    linear = {}

    def lin(a, b):
        key = (a, b)
        if key not in linear:
            br = alg.bracket_basis(a, b)
            linear[key] = sum((MultiPoly.var(names, names[k]).scale(c) for k, c in br.items()),
                              MultiPoly.zero(names)) if br else None
        return linear[key]

    fv = [alg.pos[LieBasisIndex.parse(v)] for v in f.support_vars()]
    gv = [alg.pos[LieBasisIndex.parse(v)] for v in g.support_vars()]
    dg = {b: g.partial(names[b]) for b in gv}
    out = MultiPoly.zero(names)
    for a in fv:
        acc = None
        for b in gv:
            L = lin(a, b)
            if L is None:
                continue
            t = dg[b] * L
            acc = t if acc is None else acc + t
        if acc is not None:
            out = out + f.partial(names[a]) * acc
    return out


# ---------------------------------------------------------------- matrices

def _zero(alg):
    return MultiPoly.zero(alg.names)


def _matrix(alg, tag, l):
    """Coordinate matrix of E(l), Eprime(l) or F(l) as nested lists of MultiPoly."""
    n, d = alg.n, alg.d
    rows = d[l]
    cols = d[(l + 1) % n] if tag == "F" else d[l]
    out = []
    for i in range(1, rows + 1):
        row = []
        for j in range(1, cols + 1):
            if tag == "Eprime" and alg.mode == "diag":
                row.append(sym_var(alg, LieBasisIndex("G", l, i, j).name) - sym_var(alg, LieBasisIndex("E", l, i, j).name))
            else:
                row.append(sym_var(alg, LieBasisIndex(tag, l, i, j).name))
        out.append(row)
    return out


def _shifted(alg, M, c):
    if not c:
        return M
    return [[x - c if i == j else x for j, x in enumerate(row)] for i, row in enumerate(M)]


def _vec(alg, tag, l):
    return [sym_var(alg, LieBasisIndex(tag, l, i).name) for i in range(1, alg.d[l] + 1)]


def _row_times(alg, v, M):
    if not M:
        return []
    cols = len(M[0])
    out = []
    for j in range(cols):
        acc = _zero(alg)
        for i, x in enumerate(v):
            acc = acc + x * M[i][j]
        out.append(acc)
    return out


def _matmul(alg, A, B):
    if not A or not B:
        rows = len(A)
        cols = len(B[0]) if B else 0
        return [[_zero(alg)] * cols for _ in range(rows)]
    return [_row_times(alg, row, B) for row in A]


def _dot(alg, u, v):
    acc = _zero(alg)
    for x, y in zip(u, v):
        acc = acc + x * y
    return acc


def _deform_shift(alg, mu, l):
    if mu is None:
        return Fraction(0)
    m = _mu_vector(mu, alg.n)[l]
    if not m:
        return Fraction(0)
    if alg.d[l] == 0:
        raise RangeError(f"deformed generator at node {l} needs d_{l} > 0 when mu_{l} != 0")
    return m / alg.d[l]


def _node(alg, l):
    if not isinstance(l, int) or not 0 <= l < alg.n:
        raise RangeError(f"node {l!r} out of range for n={alg.n}")
    return l


def _exps(indices, count=None):
    idx = tuple(indices)
    if count is not None and len(idx) != count:
        raise RangeError(f"expected {count} indices, got {len(idx)}")
    if any((not isinstance(s, int)) or s < 0 for s in idx):
        raise RangeError(f"indices must be nonnegative integers, got {idx}")
    return idx


def classical_generator(alg, kind, l=0, indices=(), mu=None):
    """Invariant polynomials of the classical reduction.

    a: Tr E_l^r            indices=(r,)
    b: p_l^T E_l^s q_l     indices=(s,)
    bprime: (-1)^s p_l^T E'_l^s q_l
    bchain: chain from node l through len(indices) nodes, indices=(s_l, ..., s_m)
    C: trace of prod_m E_m^{s_m} F_m starting at node l; len(indices) = r n
    With mu given, each E_m is replaced by E_m - (mu_m / d_m).
    """
    l = _node(alg, l)
    n, d = alg.n, alg.d
    if kind == "a":
        (r,) = _exps(indices, 1)
        if r == 0:
            return sym_const(alg, d[l])
        E = _shifted(alg, _matrix(alg, "E", l), _deform_shift(alg, mu, l))
        M = E
        for _ in range(r - 1):
            M = _matmul(alg, M, E)
        return sum((M[i][i] for i in range(d[l])), _zero(alg))
    if kind in ("b", "bprime"):
        (s,) = _exps(indices, 1)
        if kind == "b":
            E = _shifted(alg, _matrix(alg, "E", l), _deform_shift(alg, mu, l))
        else:
            E = _shifted(alg, _matrix(alg, "Eprime", l), -_deform_shift(alg, mu, l))
        row = _vec(alg, "P", l)
        for _ in range(s):
            row = _row_times(alg, row, E)
        out = _dot(alg, row, _vec(alg, "Q", l))
        return out.scale((-1) ** s) if kind == "bprime" else out
    if kind == "bchain":
        s = _exps(indices)
        if not s:
            raise RangeError("a chain needs at least one exponent")
        row = _vec(alg, "P", l)
        node = l
        for k, sk in enumerate(s):
            E = _shifted(alg, _matrix(alg, "E", node), _deform_shift(alg, mu, node))
            for _ in range(sk):
                row = _row_times(alg, row, E)
            if k < len(s) - 1:
                row = _row_times(alg, row, _matrix(alg, "F", node)) if row else []
                node = (node + 1) % n
        return _dot(alg, row, _vec(alg, "Q", node))
    if kind == "C":
        s = _exps(indices)
        if not s or len(s) % n:
            raise RangeError(f"C needs a positive multiple of n={n} exponents")
        if d[l] == 0:
            return _zero(alg)
        M = [[sym_const(alg, int(i == j)) for j in range(d[l])] for i in range(d[l])]
        node = l
        for sk in s:
            E = _shifted(alg, _matrix(alg, "E", node), _deform_shift(alg, mu, node))
            for _ in range(sk):
                M = _matmul(alg, M, E)
            M = _matmul(alg, M, _matrix(alg, "F", node))
            node = (node + 1) % n
        return sum((M[i][i] for i in range(d[l])), _zero(alg))
    raise RangeError(f"unknown generator kind {kind!r}")


# ---------------------------------------------------------------- constraints

def constraint_polynomials(alg):
    """c_{l,ij} = (E_l F_l + F_l E'_{l+1})_{ij} + q_{l,i} p_{l+1,j}, the transpose
    of B_l A_l + A'_{l+1} B_l + p_{l+1} q_l."""
    n, d = alg.n, alg.d
    out = {}
    for l in range(n):
        m = (l + 1) % n
        if d[l] == 0 or d[m] == 0:
            continue
        E = _matrix(alg, "E", l)
        F = _matrix(alg, "F", l)
        Ep = _matrix(alg, "Eprime", m)
        EF = _matmul(alg, E, F)
        FE = _matmul(alg, F, Ep)
        p = _vec(alg, "P", m)
        q = _vec(alg, "Q", l)
        for i in range(d[l]):
            for j in range(d[m]):
                out[(l, i + 1, j + 1)] = EF[i][j] + FE[i][j] + q[i] * p[j]
    return out


def diag_substitution(alg, mu=None):
    """Images of the e' (or G) letters under the diagonal moment condition e + e' = mu."""
    mu = _mu_vector(mu, alg.n)
    images = {}
    for b in alg.basis:
        if b.tag == "Eprime":
            images[b.name] = MultiPoly.constant(alg.names, mu[b.l] if b.i == b.j else 0) - sym_var(alg, LieBasisIndex("E", b.l, b.i, b.j).name)
        elif b.tag == "G":
            images[b.name] = MultiPoly.constant(alg.names, mu[b.l] if b.i == b.j else 0)
    return images


def reduce_diag_sym(alg, f, mu=None):
    return f.with_variables(alg.names).substitute(diag_substitution(alg, mu))


def _ideal_variables(alg):
    rank = {"Q": 0, "P": 1, "F": 2, "E": 3}
    letters = [b for b in alg.basis if b.tag in rank]
    letters.sort(key=lambda b: (rank[b.tag], b.l, b.i, b.j))
    return tuple(b.name for b in letters)


_IDEALS = {}


def constraint_ideal(n, d, mu=None):
    """Ideal of S(a)/(e + e' - mu) cut out by the constraints, as a GroebnerIdeal
    in the e, f, p, q letters (cached per shape)."""
    mu_t = tuple(_mu_vector(mu, n))
    key = (n, tuple(d), mu_t)
    if key not in _IDEALS:
        alg = build_chainsaw_lie(n, d, "eprime")
        sub = diag_substitution(alg, mu_t)
        gens = [c.substitute(sub) for _, c in sorted(constraint_polynomials(alg).items())]
        _IDEALS[key] = GroebnerIdeal(_ideal_variables(alg), gens)
    return _IDEALS[key]


# ---------------------------------------------------------------- relations

MAX_TOTAL_DIM = 5


def _is_sl2_case(d):
    return len(d) >= 2 and sum(1 for x in d if x) == 1


def _residue(ideal, alg, h):
    """(True, how) if h vanishes identically or in the reduced ring."""
    if h.is_zero():
        return True, "identity"
    h = reduce_diag_sym(alg, h)
    if h.is_zero():
        return True, "diag"
    return ideal.contains(h), "ideal"


def verify_poisson_relations(n, d, max_index=3, families=None):
    """Check the bracket relations among a, b and chain invariants.

    With one active node (and n >= 2) the sl2 relations are checked as exact
    identities in S(a). Otherwise every family is checked modulo the constraint
    ideal plus the diagonal condition e + e' = 0, with the cyclic Cartan matrix;
    the Serre-type family is checked where c_kl = -1."""
    d = tuple(d)
    if len(d) != n:
        raise ValueError("dimension vector length does not match n")
    if sum(d) > MAX_TOTAL_DIM:
        raise SizeLimitError(f"sum of dimensions {sum(d)} exceeds the symbolic bound {MAX_TOTAL_DIM}")
    alg = build_chainsaw_lie(n, d, "eprime")
    rep = Report(f"poisson n={n} d={list(d)}", info={"max_index": max_index})
    active = [l for l in range(n) if d[l]]
    if not active:
        return rep
    want = set(families or ("aa", "ab", "bb", "serre", "chain", "sl2"))
    gen = lru_cache(maxsize=None)(lambda kind, l, idx: classical_generator(alg, kind, l, idx))
    br = lru_cache(maxsize=None)(lambda x, y: lie_poisson_bracket(alg, gen(*x), gen(*y)))
    R = range(max_index + 1)

    if _is_sl2_case(d):
        (l,) = active
        rep.info["case"] = "sl2"
        if "sl2" not in want:
            return rep
        for r, s in product(range(1, max_index + 1), repeat=2):
            h = br(("a", l, (r,)), ("a", l, (s,)))
            rep.add("sl2 {a_r,a_s}=0", f"r={r} s={s}", h.is_zero(), h.degree())
        for r in range(1, max_index + 1):
            for s in R:
                h = br(("a", l, (r,)), ("b", l, (s,))) - gen("b", l, (r + s - 1,)).scale(r)
                rep.add("sl2 {a_r,b_s}=r b_{r+s-1}", f"r={r} s={s}", h.is_zero(), h.degree())
        for r, s in product(R, repeat=2):
            lo, hi, sign = (s, r, 1) if r >= s else (r, s, -1)
            rhs = sum((gen("b", l, (m,)) * gen("b", l, (lo + hi - m - 1,)) for m in range(lo, hi)), _zero(alg))
            h = br(("b", l, (r,)), ("b", l, (s,))) - rhs.scale(sign)
            rep.add("sl2 {b_r,b_s}=sum b_m b_{r+s-m-1}", f"r={r} s={s}", h.is_zero(), h.degree())
        return rep

    cartan = CartanMatrix(n, d)
    rep.info["case"] = cartan.type
    ideal = constraint_ideal(n, d)

    def check(name, inst, h):
        ok, how = _residue(ideal, alg, h)
        rep.add(name, inst, ok, h.degree(), method=how)

    for k in active:
        for l in active:
            if "aa" in want:
                for r, s in product(range(1, max_index + 1), repeat=2):
                    check("{a_k,a_l}=0", f"k={k} l={l} r={r} s={s}", br(("a", k, (r,)), ("a", l, (s,))))
            if "ab" in want:
                for r in range(1, max_index + 1):
                    for s in R:
                        h = br(("a", k, (r,)), ("b", l, (s,)))
                        if k == l:
                            h = h - gen("b", l, (r + s - 1,)).scale(r)
                        check("{a_k,b_l}=delta r b", f"k={k} l={l} r={r} s={s}", h)
            if "bb" in want:
                c = cartan(k, l)
                for r, s in product(range(max_index), repeat=2):
                    h = (br(("b", k, (r + 1,)), ("b", l, (s,))) - br(("b", k, (r,)), ("b", l, (s + 1,)))
                         - (gen("b", k, (r,)) * gen("b", l, (s,))).scale(c))
                    check("{b_k,r+1,b_l,s}-{b_k,r,b_l,s+1}=c b b", f"k={k} l={l} r={r} s={s} c={c}", h)
            if "serre" in want and k != l and cartan(k, l) == -1:
                for r1 in R:
                    for r2 in range(r1, max_index + 1):
                        for s in R:
                            inner1 = br(("b", k, (r1,)), ("b", l, (s,)))
                            inner2 = br(("b", k, (r2,)), ("b", l, (s,)))
                            h = (lie_poisson_bracket(alg, gen("b", k, (r2,)), inner1)
                                 + lie_poisson_bracket(alg, gen("b", k, (r1,)), inner2))
                            check("serre", f"k={k} l={l} r1={r1} r2={r2} s={s}", h)
    if "chain" in want:
        for k in range(1, n - 1):
            for l in range(k, n - 1):
                if any(d[m] == 0 for m in range(k, l + 2)):
                    continue
                for svec in product(R, repeat=l - k + 1):
                    for r in R:
                        h = (lie_poisson_bracket(alg, gen("bchain", k, svec), gen("b", l + 1, (r,)))
                             - gen("bchain", k, svec + (r,)))
                        check("chain {b_kl;s,b_l+1,r}=b_k,l+1;s,r", f"k={k} l={l} s={list(svec)} r={r}", h)
    return rep


def verify_ideal_invariance(n, d):
    """{x, c} lies in the span of the constraints for every letter x and
    constraint c (degree two, so constant multipliers suffice)."""
    from .linalg import SparseSpan
    alg = build_chainsaw_lie(n, d, "eprime")
    rep = Report(f"ideal invariance n={n} d={list(d)}")
    cons = constraint_polynomials(alg)
    span = SparseSpan()
    for key, c in sorted(cons.items()):
        span.add(c.terms, label=key)
    for key, c in sorted(cons.items()):
        for x in alg.names:
            h = lie_poisson_bracket(alg, sym_var(alg, x), c)
            res, _ = span.reduce(h.terms)
            rep.add("{x,c} in (c)", f"x={x} c={key}", not res, h.degree())
    if not cons:
        rep.info["vacuous"] = True
    return rep


# ---------------------------------------------------------------- points

@dataclass(frozen=True)
class ConstraintPoint:
    """Point of S_d: matrices A_l, A'_l, B_l (d_{l+1} x d_l) and vectors p_l, q_l."""
    n: int
    d: tuple
    A: tuple
    Aprime: tuple
    B: tuple
    p: tuple
    q: tuple
    field: str = "QQ"

    def coordinates(self):
        """Values of the S(a) letters at this point (transposed convention)."""
        vals = {}
        n, d = self.n, self.d
        for l in range(n):
            m = (l + 1) % n
            for i in range(d[l]):
                vals[f"p_{l}_{i + 1}"] = self.p[l][i]
                vals[f"q_{l}_{i + 1}"] = self.q[l][i]
                for j in range(d[l]):
                    vals[f"e_{l}_{i + 1}_{j + 1}"] = self.A[l][j][i]
                    vals[f"ep_{l}_{i + 1}_{j + 1}"] = self.Aprime[l][j][i]
                    vals[f"g_{l}_{i + 1}_{j + 1}"] = self.A[l][j][i] + self.Aprime[l][j][i]
                for j in range(d[m]):
                    vals[f"f_{l}_{i + 1}_{j + 1}"] = self.B[l][j][i]
        return vals

    def residual(self):
        """B_l A_l + A'_{l+1} B_l + p_{l+1} q_l for every l."""
        out = []
        n, d = self.n, self.d
        for l in range(n):
            m = (l + 1) % n
            R = [[sum((self.B[l][a][k] * self.A[l][k][b] for k in range(d[l])), Fraction(0))
                  + sum((self.Aprime[m][a][k] * self.B[l][k][b] for k in range(d[m])), Fraction(0))
                  + self.p[m][a] * self.q[l][b] for b in range(d[l])] for a in range(d[m])]
            out.append(R)
        return out

    def satisfies(self):
        return all(x == 0 for R in self.residual() for row in R for x in row)

    def to_json(self):
        import json

        def mat(M):
            return [[fmt_q(x) for x in row] for row in M]
        return json.dumps({"n": self.n, "d": list(self.d),
                           "A": [mat(M) for M in self.A], "Aprime": [mat(M) for M in self.Aprime],
                           "B": [mat(M) for M in self.B],
                           "p": [[fmt_q(x) for x in v] for v in self.p],
                           "q": [[fmt_q(x) for x in v] for v in self.q]}, sort_keys=True)

    @classmethod
    def from_json(cls, s):
        import json
        o = json.loads(s) if isinstance(s, str) else s

        def mat(M):
            return tuple(tuple(Q(x) for x in row) for row in M)
        return cls(o["n"], tuple(o["d"]), tuple(mat(M) for M in o["A"]), tuple(mat(M) for M in o["Aprime"]),
                   tuple(mat(M) for M in o["B"]), tuple(tuple(Q(x) for x in v) for v in o["p"]),
                   tuple(tuple(Q(x) for x in v) for v in o["q"]))


def solve_sylvester(A, Aprime, rhs, rows, cols):
    """Solve X A + A' X = rhs for X (rows x cols); None if the map is singular."""
    N = rows * cols
    if N == 0:
        return []
    M = []
    b = []
    for a in range(rows):
        for c in range(cols):
            row = [Fraction(0)] * N
            for k in range(cols):
                row[a * cols + k] += A[k][c]
            for k in range(rows):
                row[k * cols + c] += Aprime[a][k]
            M.append(row)
            b.append(rhs[a][c])
    from .linalg import rank
    if rank(M) < N:
        return None
    x = solve(M, b)
    return [[x[a * cols + c] for c in range(cols)] for a in range(rows)]


def _rand_q(rng, lo=-4, hi=4, dens=(1, 1, 2, 3)):
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def sample_constraint_point(n, d, seed=0, A=None, Aprime=None, p=None, q=None, retries=20):
    """Random exact point of S_d. Any of A, Aprime, p, q may be given per node
    (scalars are accepted for 1x1 blocks); B is solved from the constraint."""
    d = tuple(d)
    rng = random.Random(seed)

    def as_mat(x, k):
        if x is None:
            return None
        if isinstance(x, (int, Fraction, str)):
            return [[Q(x)]]
        return [[Q(v) for v in row] for row in x]

    def as_vec(x):
        if x is None:
            return None
        if isinstance(x, (int, Fraction, str)):
            return [Q(x)]
        return [Q(v) for v in x]

    def given(obj, l):
        if obj is None:
            return None
        if isinstance(obj, dict):
            return obj.get(l)
        return obj[l]

    fixed_spectrum = A is not None or Aprime is not None
    for _ in range(retries):
        As, Aps, ps, qs = [], [], [], []
        for l in range(n):
            k = d[l]
            a = as_mat(given(A, l), k)
            ap = as_mat(given(Aprime, l), k)
            As.append(a if a is not None else [[_rand_q(rng) for _ in range(k)] for _ in range(k)])
            Aps.append(ap if ap is not None else [[_rand_q(rng) for _ in range(k)] for _ in range(k)])
            pv = as_vec(given(p, l))
            qv = as_vec(given(q, l))
            ps.append(pv if pv is not None else [_rand_q(rng) for _ in range(k)])
            qs.append(qv if qv is not None else [_rand_q(rng) for _ in range(k)])
        Bs = []
        clash = False
        for l in range(n):
            m = (l + 1) % n
            rhs = [[-ps[m][a] * qs[l][b] for b in range(d[l])] for a in range(d[m])]
            X = solve_sylvester(As[l], Aps[m], rhs, d[m], d[l])
            if X is None:
                clash = True
                break
            Bs.append(X)
        if not clash:
            def tup(M):
                return tuple(tuple(r) for r in M)
            return ConstraintPoint(n, d, tuple(tup(M) for M in As), tuple(tup(M) for M in Aps),
                                   tuple(tup(M) for M in Bs), tuple(tuple(v) for v in ps),
                                   tuple(tuple(v) for v in qs))
        if fixed_spectrum:
            break
    raise SpectralClash("spec(A_l) meets spec(-A'_{l+1}); the constraint cannot be solved for B")


def sample_slice_point(n, d, seed=0, retries=50):
    """Point on the zero level of the diagonal moment map with every A_l
    diagonal, simple spectrum, all spectra pairwise distinct, and p, q nonzero."""
    rng = random.Random(seed)
    for _ in range(retries):
        total = sum(d)
        xs = set()
        while len(xs) < total:
            xs.add(_rand_q(rng, -9, 9))
        xs = sorted(xs)
        rng.shuffle(xs)
        A, Ap, p, q = {}, {}, {}, {}
        k = 0
        for l in range(n):
            diag = xs[k:k + d[l]]
            k += d[l]
            A[l] = [[diag[i] if i == j else Fraction(0) for j in range(d[l])] for i in range(d[l])]
            Ap[l] = [[-x for x in row] for row in A[l]]
            p[l] = [_nonzero(rng) for _ in range(d[l])]
            q[l] = [_nonzero(rng) for _ in range(d[l])]
        try:
            return sample_constraint_point(n, d, seed, A=A, Aprime=Ap, p=p, q=q)
        except SpectralClash:
            continue
    raise SpectralClash("could not sample a slice point")


def _nonzero(rng):
    while True:
        x = _rand_q(rng)
        if x:
            return x


# ---------------------------------------------------------------- etale coordinates

def _esym(xs, r):
    """Elementary symmetric polynomial sigma_r of a list of scalars."""
    e = [Fraction(1)] + [Fraction(0)] * len(xs)
    for x in xs:
        for k in range(len(xs), 0, -1):
            e[k] += e[k - 1] * x
    return e[r] if 0 <= r <= len(xs) else Fraction(0)


def _inverse(M):
    k = len(M)
    cols = []
    for c in range(k):
        x = solve(M, [Fraction(int(i == c)) for i in range(k)])
        if x is None:
            raise ValueError("singular power-sum Jacobian (repeated eigenvalues)")
        cols.append(x)
    return [[cols[c][r] for c in range(k)] for r in range(k)]


_GEN_BRACKETS = {}


def _generator_brackets(n, d):
    key = (n, tuple(d))
    if key not in _GEN_BRACKETS:
        alg = build_chainsaw_lie(n, d, "eprime")
        gens = []
        for l in range(n):
            gens += [("a", l, r) for r in range(1, d[l] + 1)]
            gens += [("b", l, s) for s in range(d[l])]
        polys = {g: classical_generator(alg, g[0], g[1], (g[2],)) for g in gens}
        table = {}
        for i, g in enumerate(gens):
            for h in gens[i + 1:]:
                table[(g, h)] = lie_poisson_bracket(alg, polys[g], polys[h])
        _GEN_BRACKETS[key] = (gens, polys, table)
    return _GEN_BRACKETS[key]


def etale_coordinates(point):
    """x_{l,i} (diagonal of A_l) and y_{l,i} at a slice point, plus gradients
    of each with respect to the generators a_{l,r}, b_{l,s}."""
    n, d = point.n, point.d
    gens, polys, _ = _generator_brackets(n, d)
    vals = point.coordinates()
    gval = {g: polys[g].evaluate(vals) for g in gens}
    coords = {}
    for l in range(n):
        k = d[l]
        if not k:
            continue
        A = point.A[l]
        if any(A[i][j] for i in range(k) for j in range(k) if i != j):
            raise ValueError("etale check needs diagonal A_l (slice point)")
        x = [A[i][i] for i in range(k)]
        if len(set(x)) < k:
            raise ValueError(f"repeated eigenvalues at node {l}")
        J = [[(r + 1) * x[i] ** r for i in range(k)] for r in range(k)]
        Jinv = _inverse(J)
        dx = []
        for i in range(k):
            dx.append({("a", l, r + 1): Jinv[i][r] for r in range(k)})
        for i in range(k):
            others = [x[m] for m in range(k) if m != i]
            y = sum(((-1) ** r * _esym(others, r) * gval[("b", l, k - 1 - r)] for r in range(k)), Fraction(0))
            grad = {("b", l, k - 1 - r): (-1) ** r * _esym(others, r) for r in range(k)}
            for m in range(k):
                if m == i:
                    continue
                rest = [x[t] for t in range(k) if t not in (i, m)]
                dym = sum(((-1) ** r * _esym(rest, r - 1) * gval[("b", l, k - 1 - r)] for r in range(1, k)), Fraction(0))
                for g, c in dx[m].items():
                    grad[g] = grad.get(g, 0) + dym * c
            coords[("x", l, i + 1)] = (x[i], dx[i])
            coords[("y", l, i + 1)] = (y, grad)
    return coords


def etale_bracket_check(point, tolerance="exact", tol=1e-9, sign=1):
    """Check the brackets of the etale coordinates x, y at a slice point.

    The cross-node relation is {y_k,i, y_l,j} = sign (2 delta_kl - c_kl) y y / (x_k,i - x_l,j).
    sign=1 is the customary form of the formula; solving the constraint
    B_l A_l + A'_{l+1} B_l + p_{l+1} q_l = 0 on the slice gives sign=-1."""
    n, d = point.n, point.d
    if tolerance not in ("exact", "float"):
        raise ValueError("tolerance must be 'exact' or 'float'")
    if any(point.Aprime[l][i][j] != -point.A[l][i][j] for l in range(n) for i in range(d[l]) for j in range(d[l])):
        raise ValueError("point is not on the zero level of the diagonal moment map (need A' = -A)")
    if not point.satisfies():
        raise ValueError("point does not satisfy the constraint")
    gens, polys, table = _generator_brackets(n, d)
    vals = point.coordinates()
    conv = (lambda v: v) if tolerance == "exact" else float
    bval = {}
    for (g, h), poly in table.items():
        v = conv(poly.evaluate(vals))
        bval[(g, h)] = v
        bval[(h, g)] = -v
    coords = etale_coordinates(point)
    cartan = CartanMatrix(n, d)

    def pb(u, w):
        gu, gw = coords[u][1], coords[w][1]
        total = conv(Fraction(0))
        for g, cu in gu.items():
            for h, cw in gw.items():
                if g != h:
                    total += conv(cu) * conv(cw) * bval[(g, h)]
        return total

    def close(a, b):
        return a == b if tolerance == "exact" else abs(a - b) <= tol * max(1.0, abs(b))

    rep = Report(f"etale n={n} d={list(d)}", info={"sign": sign})
    keys = sorted(coords)
    xs = [k for k in keys if k[0] == "x"]
    ys = [k for k in keys if k[0] == "y"]
    for u in xs:
        for w in xs:
            if u < w:
                rep.add("{x,x}=0", f"{u[1:]} {w[1:]}", close(pb(u, w), 0))
    for u in xs:
        for w in ys:
            want = conv(coords[w][0]) if u[1:] == w[1:] else conv(Fraction(0))
            rep.add("{x,y}=delta y", f"{u[1:]} {w[1:]}", close(pb(u, w), want))
    for u in ys:
        for w in ys:
            if not u < w:
                continue
            (_, k, i), (_, l, j) = u, w
            xk, xl = coords[("x", k, i)][0], coords[("x", l, j)][0]
            if xk == xl:
                raise ValueError("x_{k,i} = x_{l,j}: the bracket formula has a zero denominator")
            coef = 2 * int(k == l) - cartan(k, l)
            want = conv(Fraction(sign * coef) * coords[u][0] * coords[w][0] / (xk - xl)) if coef else conv(Fraction(0))
            rep.add("{y,y}=(2delta-c)yy/(x-x)", f"{u[1:]} {w[1:]}", close(pb(u, w), want))
    return rep


# ---------------------------------------------------------------- spectral pair

def spectral_pair(a_values, b_values):
    """Monic P from power sums a_1..a_d (Newton), Q = sum f_s z^{d-1-s}, and
    the check that Q/P expands as sum_r b_r z^{-1-r} through r = 2d-1, where
    b_r for r >= d follows the recursion b_s + sum_r e_r b_{s-r} = 0."""
    a = list(a_values)
    b = list(b_values)
    k = len(a)
    if len(b) < k:
        raise ValueError(f"need at least d={k} b-values, got {len(b)}")
    polys = [x for x in a + b if isinstance(x, MultiPoly)]
    if polys:
        names = []
        for x in polys:
            names += [v for v in x.vars if v not in names]
        zero = MultiPoly.zero(names)
        one = MultiPoly.constant(names, 1)
        lift = lambda x: x.with_variables(names) if isinstance(x, MultiPoly) else MultiPoly.constant(names, x)
    else:
        zero, one = Fraction(0), Fraction(1)
        lift = Q
    a = [lift(x) for x in a]
    b = [lift(x) for x in b]
    e = [one]
    for r in range(1, k + 1):
        acc = zero
        for i in range(1, r + 1):
            acc = acc + a[i - 1] * e[r - i]
        e.append(acc * Fraction(-1, r))
    f = []
    for s in range(k):
        acc = b[s]
        for r in range(1, s + 1):
            acc = acc + e[r] * b[s - r]
        f.append(acc)
    bb = list(b[:k])
    for s in range(k, 2 * k):
        if s < len(b):
            bb.append(b[s])
        else:
            acc = zero
            for r in range(1, k + 1):
                acc = acc + e[r] * bb[s - r]
            bb.append(acc * Fraction(-1))
    recursion_ok = True
    for s in range(k, min(len(b), 2 * k)):
        acc = b[s]
        for r in range(1, k + 1):
            acc = acc + e[r] * b[s - r]
        recursion_ok = recursion_ok and not acc
    expansion = []
    if k:
        P = TruncSeries(k, e, None, zero).truncate(-k + 1)
        Qs = TruncSeries(k - 1, f, None, zero)
        ratio = Qs * P.inverse(one)
        expansion = [ratio[-1 - r] for r in range(2 * k)]
    ok = all(not (x - y) for x, y in zip(expansion, bb)) and recursion_ok
    return {"P": e, "Q": f, "b": bb, "expansion": expansion, "ok": ok, "recursion_ok": recursion_ok}


# ---------------------------------------------------------------- examples

def example_relations():
    """The SL(3) conifold relation and the affine SL(2) relation, checked for
    membership in the moment-map ideal A_{l+1}B_l - B_lA_l + p_{l+1}q_l."""
    rep = Report("examples")
    names = ["A1", "A2", "B1", "p1", "p2", "q1", "q2"]
    A1, A2, B1, p1, p2, q1, q2 = [MultiPoly.var(names, v) for v in names]
    moment = B1 * (A2 - A1) + p2 * q1
    ideal = GroebnerIdeal(("q1", "q2", "p1", "p2", "B1", "A1", "A2"), [moment])
    rel = p1 * q1 * p2 * q2 + q2 * B1 * p1 * (A2 - A1)
    rep.add("sl3 conifold b10 b20 + r(A2-A1) = 0", "n=3 d=(0,1,1)", ideal.contains(rel), rel.degree())

    names = ["A0", "A1", "B0", "B1", "p0", "p1", "q0", "q1"]
    A0, A1, B0, B1, p0, p1, q0, q1 = [MultiPoly.var(names, v) for v in names]
    m1 = B1 * (A0 - A1) + p0 * q1
    m0 = B0 * (A1 - A0) + p1 * q0
    ideal = GroebnerIdeal(("q0", "q1", "p0", "p1", "B0", "B1", "A0", "A1"), [m0, m1])
    s = B0 * B1
    node = {"1": (q1 * p1, A1), "2": (q0 * p0, A0), "0": (q0 * p0, A0)}
    readings = {
        "indices mod n (2 -> 0)": ("1", "2"),
        "relabel nodes (1,2) -> (1,0)": ("1", "0"),
    }
    validated = []
    for label, (i, j) in readings.items():
        (bi, Ai), (bj, Aj) = node[i], node[j]
        rel = bi * bj - s * (Aj - Ai) ** 2
        ok = ideal.contains(rel)
        rep.add("affine sl2 b10 b20 - s(A2-A1)^2 = 0", label, ok, rel.degree())
        if ok:
            validated.append(label)
    flipped = q1 * p1 * q0 * p0 + s * (A0 - A1) ** 2
    rep.info["affine sl2 validated readings"] = validated
    rep.info["affine sl2 with + sign in ideal"] = ideal.contains(flipped)
    return rep
