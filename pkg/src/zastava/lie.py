"""The chainsaw Lie algebra a_d built from explicit structure constants.

Basis letters (1-based matrix indices, nodes mod n):
  E(l,i,j), Eprime(l,i,j)  two copies of gl(V_l)
  G(l,i,j) = E + Eprime     the diagonal gl(V_l), used instead of Eprime in diag mode
  F(l,i,j)                  i <= d_l, j <= d_{l+1}; central in the nilpotent part
  P(l,i), Q(l,i)            i <= d_l

Conventions: E(l) acts on Q(l) as on column vectors, Eprime(l) acts on P(l) as
on row vectors, and [Q(k,i), P(k+1,j)] = F(k,i,j). The gl-actions on F follow
from Jacobi: E(l) acts on its first index, Eprime(l+1) on its second.
"""

import json
from fractions import Fraction
from typing import NamedTuple

from .scalars import fmt_q

TAG_RANK = {"F": 0, "P": 1, "Q": 2, "E": 3, "Eprime": 4, "G": 4}
PREFIX = {"F": "f", "P": "p", "Q": "q", "E": "e", "Eprime": "ep", "G": "g"}


class LieBasisIndex(NamedTuple):
    tag: str
    l: int
    i: int
    j: int = 0

    def sort_key(self):
        return (TAG_RANK[self.tag], self.l, self.i, self.j)

    @property
    def name(self):
        if self.tag in ("P", "Q"):
            return f"{PREFIX[self.tag]}_{self.l}_{self.i}"
        return f"{PREFIX[self.tag]}_{self.l}_{self.i}_{self.j}"

    @classmethod
    def parse(cls, name):
        parts = name.split("_")
        tag = {v: k for k, v in PREFIX.items()}[parts[0]]
        nums = [int(x) for x in parts[1:]]
        return cls(tag, *nums)


class TorusWeight(NamedTuple):
    """Exponents of t_0..t_{n-1}, u, v followed by the auxiliary st_{l,i}."""
    tuv: tuple
    st: tuple

    def __mul__(self, other):
        return TorusWeight(tuple(a + b for a, b in zip(self.tuv, other.tuv)),
                           tuple(a + b for a, b in zip(self.st, other.st)))

    def inv(self):
        return TorusWeight(tuple(-a for a in self.tuv), tuple(-a for a in self.st))


def _eprime_bracket(n, x, y):
    """Bracket of two basis letters in the E/Eprime basis, as {letter: coeff}."""
    r = _rule(n, x, y)
    if r is not None:
        return r
    r = _rule(n, y, x)
    if r is not None:
        return {k: -c for k, c in r.items()}
    return {}


def _rule(n, x, y):
    tx, ty = x.tag, y.tag
    if tx == ty and tx in ("E", "Eprime"):
        if x.l != y.l:
            return {}
        out = {}
        if x.j == y.i:
            k = LieBasisIndex(tx, x.l, x.i, y.j)
            out[k] = out.get(k, 0) + 1
        if y.j == x.i:
            k = LieBasisIndex(tx, x.l, y.i, x.j)
            out[k] = out.get(k, 0) - 1
        return {k: Fraction(c) for k, c in out.items() if c}
    if tx == "E" and ty == "Q":
        if x.l == y.l and x.j == y.i:
            return {LieBasisIndex("Q", x.l, x.i): Fraction(1)}
        return {}
    if tx == "Eprime" and ty == "P":
        if x.l == y.l and x.i == y.i:
            return {LieBasisIndex("P", x.l, x.j): Fraction(-1)}
        return {}
    if tx == "Q" and ty == "P":
        if y.l == (x.l + 1) % n:
            return {LieBasisIndex("F", x.l, x.i, y.i): Fraction(1)}
        return {}
    if tx == "E" and ty == "F":
        if x.l == y.l and x.j == y.i:
            return {LieBasisIndex("F", y.l, x.i, y.j): Fraction(1)}
        return {}
    if tx == "Eprime" and ty == "F":
        if x.l == (y.l + 1) % n and y.j == x.i:
            return {LieBasisIndex("F", y.l, y.i, x.j): Fraction(-1)}
        return {}
    if tx == ty:
        return {}
    return None


class ChainsawLie:
    """Immutable finite-dimensional Lie algebra with a fixed PBW order."""

    def __init__(self, n, d, basis_mode="eprime"):
        d = tuple(int(x) for x in d)
        if n < 1:
            raise ValueError("need at least one node")
        if len(d) != n:
            raise ValueError(f"dimension vector has {len(d)} entries, expected {n}")
        if any(x < 0 for x in d):
            raise ValueError("dimensions must be nonnegative")
        if basis_mode not in ("eprime", "diag"):
            raise ValueError(f"unknown basis mode {basis_mode!r}")
        self.n = n
        self.d = d
        self.mode = basis_mode
        second = "Eprime" if basis_mode == "eprime" else "G"
        basis = []
        for l in range(n):
            dl, dn = d[l], d[(l + 1) % n]
            for i in range(1, dl + 1):
                basis.append(LieBasisIndex("P", l, i))
                basis.append(LieBasisIndex("Q", l, i))
                for j in range(1, dl + 1):
                    basis.append(LieBasisIndex("E", l, i, j))
                    basis.append(LieBasisIndex(second, l, i, j))
                for j in range(1, dn + 1):
                    basis.append(LieBasisIndex("F", l, i, j))
        basis.sort(key=LieBasisIndex.sort_key)
        self.basis = tuple(basis)
        self.pos = {b: k for k, b in enumerate(self.basis)}
        self.names = tuple(b.name for b in self.basis)
        self.slots = tuple((l, i) for l in range(n) for i in range(1, d[l] + 1))
        self._slot_pos = {s: k for k, s in enumerate(self.slots)}
        self.table = self._build_table()
        self.weights = tuple(self._weight(b) for b in self.basis)

    # structure constants
    def _to_eprime(self, b):
        if b.tag == "G":
            return {LieBasisIndex("E", b.l, b.i, b.j): Fraction(1),
                    LieBasisIndex("Eprime", b.l, b.i, b.j): Fraction(1)}
        return {b: Fraction(1)}

    def _from_eprime(self, combo):
        out = {}
        for k, c in combo.items():
            if self.mode == "diag" and k.tag == "Eprime":
                for kk, s in ((LieBasisIndex("G", k.l, k.i, k.j), 1), (LieBasisIndex("E", k.l, k.i, k.j), -1)):
                    out[kk] = out.get(kk, 0) + s * c
            else:
                out[k] = out.get(k, 0) + c
        return {self.pos[k]: c for k, c in out.items() if c}

    def _build_table(self):
        table = {}
        N = len(self.basis)
        for a in range(N):
            xa = self._to_eprime(self.basis[a])
            for b in range(a + 1, N):
                xb = self._to_eprime(self.basis[b])
                acc = {}
                for k1, c1 in xa.items():
                    for k2, c2 in xb.items():
                        for k, c in _eprime_bracket(self.n, k1, k2).items():
                            acc[k] = acc.get(k, 0) + c1 * c2 * c
                res = self._from_eprime(acc)
                if res:
                    table[(a, b)] = res
        return table

    def bracket_basis(self, a, b):
        """[basis a, basis b] as {position: coeff}; a, b are positions."""
        if a == b:
            return {}
        if a < b:
            return self.table.get((a, b), {})
        r = self.table.get((b, a))
        if not r:
            return {}
        return {k: -c for k, c in r.items()}

    def bracket(self, x, y):
        """Bilinear bracket of {position: coeff} combinations."""
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, c in self.bracket_basis(a, b).items():
                    out[k] = out.get(k, 0) + ca * cb * c
        return {k: c for k, c in out.items() if c}

    def element(self, *terms):
        """Build a combination from (LieBasisIndex or name, coeff) pairs."""
        out = {}
        for b, c in terms:
            if isinstance(b, str):
                b = LieBasisIndex.parse(b)
            k = self.pos[b]
            out[k] = out.get(k, 0) + Fraction(c)
        return {k: c for k, c in out.items() if c}

    def letter(self, tag, l, i, j=0):
        return self.pos[LieBasisIndex(tag, l, i, j)]

    def has(self, tag, l, i, j=0):
        return LieBasisIndex(tag, l, i, j) in self.pos

    # torus weights
    def _weight(self, b):
        n = self.n
        tuv = [0] * (n + 2)
        st = [0] * len(self.slots)
        U, V = n, n + 1
        if b.tag in ("E", "Eprime", "G"):
            tuv[V] += 1
            st[self._slot_pos[(b.l, b.i)]] += 1
            st[self._slot_pos[(b.l, b.j)]] -= 1
        elif b.tag == "F":
            if b.l == 0:
                tuv[U] += 1
            st[self._slot_pos[(b.l, b.i)]] += 1
            st[self._slot_pos[((b.l + 1) % n, b.j)]] -= 1
        elif b.tag == "P":
            if b.l == 1 % n:
                tuv[U] += 1
            tuv[V] += 1
            tuv[(b.l - 1) % n] += 1
            st[self._slot_pos[(b.l, b.i)]] -= 1
        elif b.tag == "Q":
            tuv[b.l] -= 1
            st[self._slot_pos[(b.l, b.i)]] += 1
        return TorusWeight(tuple(tuv), tuple(st))

    def weight_of(self, b):
        if isinstance(b, str):
            b = LieBasisIndex.parse(b)
        if isinstance(b, LieBasisIndex):
            b = self.pos[b]
        return self.weights[b]

    def bracket_weight(self):
        """Weight of the bracket itself: weight([x,y]) = weight(x) weight(y) / v."""
        tuv = [0] * (self.n + 2)
        tuv[self.n + 1] = -1
        return TorusWeight(tuple(tuv), (0,) * len(self.slots))

    # diagonal subalgebra
    def diag_letters(self):
        return [k for k, b in enumerate(self.basis) if b.tag == "G"]

    def diag_character(self, mu):
        """Linear functional on the diagonal gl: G(l,i,j) -> mu_l delta_ij."""
        mu = _mu_vector(mu, self.n)
        if self.mode != "diag":
            raise ValueError("the diagonal character needs an algebra built in diag mode")
        return {k: mu[b.l] for k, b in enumerate(self.basis) if b.tag == "G" and b.i == b.j and mu[b.l]}

    def diag_element(self, l, i, j):
        """e_{l,ij} + e'_{l,ij} as a combination, in either basis mode."""
        if self.mode == "diag":
            return {self.letter("G", l, i, j): Fraction(1)}
        return {self.letter("E", l, i, j): Fraction(1), self.letter("Eprime", l, i, j): Fraction(1)}

    # serialization
    def descriptor(self):
        return {"n": self.n, "d": list(self.d), "basis_mode": self.mode}

    def to_json(self):
        return json.dumps(self.descriptor(), sort_keys=True)

    @classmethod
    def from_json(cls, s):
        d = json.loads(s)
        return build_chainsaw_lie(d["n"], d["d"], d["basis_mode"])

    def structure_constants(self):
        """Audit export: sorted list of [x, y, {z: coeff}] over basis names."""
        rows = []
        for (a, b), res in sorted(self.table.items()):
            rows.append([self.names[a], self.names[b],
                         {self.names[k]: fmt_q(c) for k, c in sorted(res.items())}])
        return rows

    def __eq__(self, other):
        return isinstance(other, ChainsawLie) and (self.n, self.d, self.mode) == (other.n, other.d, other.mode)

    def __hash__(self):
        return hash((self.n, self.d, self.mode))

    def __repr__(self):
        return f"ChainsawLie(n={self.n}, d={self.d}, mode={self.mode})"


def _mu_vector(mu, n):
    if mu is None:
        return [Fraction(0)] * n
    mu = [Fraction(x) for x in mu]
    if len(mu) < n:
        mu = mu + [Fraction(0)] * (n - len(mu))
    if len(mu) != n:
        raise ValueError(f"character has {len(mu)} entries, expected {n}")
    return mu


_CACHE = {}


def build_chainsaw_lie(n, d, basis_mode="eprime"):
    key = (n, tuple(d), basis_mode)
    if key not in _CACHE:
        _CACHE[key] = ChainsawLie(n, d, basis_mode)
    return _CACHE[key]


def bracket(alg, x, y, alg_y=None):
    if alg_y is not None and alg_y != alg:
        raise ValueError("elements belong to different algebras")
    return alg.bracket(x, y)


def weight_of(alg, b):
    return alg.weight_of(b)


def diag_character(alg, mu):
    return alg.diag_character(mu)


def jacobi_violations(alg):
    """All basis triples where antisymmetry or Jacobi fails (exhaustive)."""
    N = len(alg.basis)
    bad = []
    for a in range(N):
        for b in range(N):
            x = alg.bracket_basis(a, b)
            y = alg.bracket_basis(b, a)
            if any(x.get(k, 0) + y.get(k, 0) for k in set(x) | set(y)):
                bad.append(("antisymmetry", a, b))
    for a in range(N):
        ea = {a: Fraction(1)}
        for b in range(a + 1, N):
            eb = {b: Fraction(1)}
            ab = alg.bracket(ea, eb)
            for c in range(b + 1, N):
                ec = {c: Fraction(1)}
                t1 = alg.bracket(ab, ec)
                t2 = alg.bracket(alg.bracket(eb, ec), ea)
                t3 = alg.bracket(alg.bracket(ec, ea), eb)
                tot = {}
                for t in (t1, t2, t3):
                    for k, v in t.items():
                        tot[k] = tot.get(k, 0) + v
                if any(tot.values()):
                    bad.append(("jacobi", a, b, c))
    return bad


def weight_violations(alg):
    bw = alg.bracket_weight()
    bad = []
    for (a, b), res in alg.table.items():
        w = alg.weights[a] * alg.weights[b] * bw
        for k in res:
            if alg.weights[k] != w:
                bad.append((a, b, k))
    return bad
