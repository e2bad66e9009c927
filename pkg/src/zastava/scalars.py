"""Exact scalars: rationals (the default), prime-field elements, and the
"num/den" string format used by every JSON payload."""

from fractions import Fraction
from numbers import Rational


def Q(x):
    """Coerce an int, Fraction or "num/den" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_q(x)
    raise TypeError(f"cannot coerce {x!r} to an exact rational")


def fmt_q(x):
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_q(s):
    s = s.strip()
    if "/" in s:
        a, b = s.split("/")
        return Fraction(int(a), int(b))
    return Fraction(int(s))


class GF:
    """Element of the prime field F_p, stored as its representative in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        if isinstance(v, Fraction):
            v = v.numerator * pow(v.denominator, -1, p)
        self.v = int(v) % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def _new(self, v):
        r = object.__new__(GF)
        r.v = v % self.p
        r.p = self.p
        return r

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.v - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.v * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.v)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return self._new(pow(self.v, -1, self.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * self._new(o).inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"GF({self.v}, {self.p})"


def binomial(k, m):
    """Generalized binomial coefficient C(k, m) for integer k and m >= 0."""
    if m < 0:
        return 0
    num = 1
    den = 1
    for t in range(m):
        num *= k - t
        den *= t + 1
    return num // den
