"""Sparse multivariate polynomials over the rationals.

A polynomial is an ordered tuple of variable names together with a map from
dense exponent tuples to nonzero Fractions. Polynomials never mutate after
construction, so they can be shared freely between workers.
"""

from fractions import Fraction

from .scalars import Q


class MultiPoly:
    __slots__ = ("vars", "terms", "_index")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError("exponent vector length does not match variables")
                if c:
                    clean[tuple(e)] = Fraction(c)
        self.terms = clean
        self._index = None

    # construction helpers
    @classmethod
    def _raw(cls, variables, terms):
        p = object.__new__(cls)
        p.vars = variables
        p.terms = terms
        p._index = None
        return p

    @classmethod
    def constant(cls, variables, c):
        variables = tuple(variables)
        c = Q(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls._raw(variables, {tuple(e): Fraction(1)})

    @classmethod
    def zero(cls, variables):
        return cls._raw(tuple(variables), {})

    def index(self, name):
        if self._index is None:
            self._index = {v: k for k, v in enumerate(self.vars)}
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    # variable bookkeeping
    def with_variables(self, variables):
        variables = tuple(variables)
        if variables == self.vars:
            return self
        pos = {v: k for k, v in enumerate(variables)}
        for e, c in self.terms.items():
            for v, a in zip(self.vars, e):
                if a and v not in pos:
                    raise ValueError(f"variable {v!r} has no slot in target list")
        idx = [pos.get(v) for v in self.vars]
        n = len(variables)
        out = {}
        for e, c in self.terms.items():
            f = [0] * n
            for k, a in zip(idx, e):
                if a:
                    f[k] = a
            out[tuple(f)] = c
        return MultiPoly._raw(variables, out)

    def _align(self, other):
        if isinstance(other, MultiPoly):
            if other.vars == self.vars:
                return self, other
            merged = list(self.vars)
            seen = set(merged)
            for v in other.vars:
                if v not in seen:
                    merged.append(v)
                    seen.add(v)
            return self.with_variables(merged), other.with_variables(merged)
        return self, MultiPoly.constant(self.vars, other)

    # arithmetic
    def __add__(self, other):
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MultiPoly) else -Q(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Q(c)
        if not c:
            return MultiPoly.zero(self.vars)
        return MultiPoly._raw(self.vars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        a, b = self._align(other)
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly._raw(a.vars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        r = MultiPoly.constant(self.vars, 1)
        for _ in range(k):
            r = r * self
        return r

    def partial(self, name):
        k = self.index(name)
        out = {}
        for e, c in self.terms.items():
            a = e[k]
            if a:
                f = list(e)
                f[k] = a - 1
                out[tuple(f)] = c * a
        return MultiPoly._raw(self.vars, out)

    def evaluate(self, values):
        """Substitute values for every variable appearing in the support."""
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, a in zip(self.vars, e):
                if a:
                    t = t * values[v] ** a
            total = total + t
        return total

    def substitute(self, images):
        """Ring homomorphism sending each named variable to a MultiPoly."""
        result = None
        cache = {}
        for e, c in self.terms.items():
            t = None
            rest = [0] * len(self.vars)
            for k, (v, a) in enumerate(zip(self.vars, e)):
                if not a:
                    continue
                if v in images:
                    key = (v, a)
                    if key not in cache:
                        cache[key] = images[v] ** a
                    t = cache[key] if t is None else t * cache[key]
                else:
                    rest[k] = a
            mono = MultiPoly._raw(self.vars, {tuple(rest): c})
            t = mono if t is None else t * mono
            result = t if result is None else result + t
        return result if result is not None else MultiPoly.zero(self.vars)

    # inspection
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def as_scalar(self):
        """The constant value if the polynomial is constant, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if not any(e):
                return c
        return None

    def support_vars(self):
        used = set()
        for e in self.terms:
            for v, a in zip(self.vars, e):
                if a:
                    used.add(v)
        return [v for v in self.vars if v in used]

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            a, b = self._align(other)
            return a.terms == b.terms
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.with_variables(sorted(self.vars)).terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(v if a == 1 else f"{v}^{a}" for v, a in zip(self.vars, e) if a)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def poly_arith(f, g, kind, var=None):
    """Add or multiply two polynomials, or differentiate f by `var`."""
    if kind == "add":
        return f + g
    if kind == "mul":
        return f * g
    if kind == "partial-derivative":
        if var is None:
            raise ValueError("partial-derivative needs a variable name")
        if var not in f.vars:
            raise KeyError(f"unknown variable {var!r}")
        return f.partial(var)
    raise ValueError(f"unknown kind {kind!r}")


def polys(names):
    """Convenience: return generator polynomials sharing the variable list."""
    names = tuple(names)
    return [MultiPoly.var(names, v) for v in names]
