"""Truncated Laurent series in u^{-1} with pessimistic truncation tracking.

A series stores its coefficients for the exponents top, top-1, ..., low.
Exponents above `top` are zero; exponents below `low` are unknown and any
attempt to read them raises TruncationError. A series with low=None is
exact (a Laurent polynomial), as for (u - v) or u^d.

Coefficients may live in any ring whose elements support +, -, * and left
multiplication by a Fraction; products keep the factor order, so
noncommutative coefficient rings are fine.
"""

import json
from fractions import Fraction

from .scalars import Q, binomial, fmt_q, parse_q


class TruncationError(ValueError):
    pass


class TruncSeries:
    __slots__ = ("top", "coeffs", "low", "zero")

    def __init__(self, top, coeffs, low="auto", zero=Fraction(0)):
        """`coeffs[k]` is the coefficient of u^(top-k). By default the series is
        reliable exactly through the last supplied coefficient."""
        self.top = top
        self.coeffs = tuple(coeffs)
        self.zero = zero
        if low == "auto":
            low = top - len(self.coeffs) + 1
        self.low = low

    @classmethod
    def exact(cls, terms, zero=Fraction(0)):
        """Laurent polynomial from {exponent: coefficient}."""
        terms = {k: v for k, v in terms.items()}
        if not terms:
            return cls(0, (), None, zero)
        top = max(terms)
        bottom = min(terms)
        coeffs = [terms.get(k, zero) for k in range(top, bottom - 1, -1)]
        return cls(top, coeffs, None, zero)

    @classmethod
    def one(cls, zero=Fraction(0), one=Fraction(1)):
        return cls(0, (one,), None, zero)

    @property
    def order(self):
        """Number of coefficients below the top exponent that are reliable."""
        return None if self.low is None else self.top - self.low

    def is_exact(self):
        return self.low is None

    def __getitem__(self, k):
        if k > self.top:
            return self.zero
        if self.low is not None and k < self.low:
            raise TruncationError(f"coefficient of u^{k} is beyond the truncation (reliable down to u^{self.low})")
        idx = self.top - k
        if idx < len(self.coeffs):
            return self.coeffs[idx]
        return self.zero

    def _bottom(self):
        """Lowest exponent with a stored coefficient."""
        return self.top - len(self.coeffs) + 1

    def truncate(self, low):
        """Forget everything below u^low."""
        if self.low is not None and low < self.low:
            raise TruncationError("cannot truncate below the reliable range")
        if low > self.top:
            return TruncSeries(low, (), low + 1, self.zero)
        return TruncSeries(self.top, [self[k] for k in range(self.top, low - 1, -1)], low, self.zero)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries(0, (other,), None, self.zero)
        top = max(self.top, other.top)
        lows = [x for x in (self.low, other.low) if x is not None]
        low = max(lows) if lows else None
        stop = low if low is not None else min(self._bottom(), other._bottom())
        coeffs = []
        for k in range(top, stop - 1, -1):
            coeffs.append(self._get(k) + other._get(k))
        return TruncSeries(top, coeffs, low, self.zero)

    __radd__ = __add__

    def _get(self, k):
        if k > self.top or self.top - k >= len(self.coeffs):
            if self.low is not None and k < self.low:
                raise TruncationError(f"coefficient of u^{k} is beyond the truncation")
            return self.zero
        return self.coeffs[self.top - k]

    def __neg__(self):
        return TruncSeries(self.top, [Fraction(-1) * c for c in self.coeffs], self.low, self.zero)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries(0, (other,), None, self.zero)
        return self + (-other)

    def scale(self, c):
        c = Q(c)
        return TruncSeries(self.top, [c * x for x in self.coeffs], self.low, self.zero)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            if isinstance(other, (int, Fraction)):
                return self.scale(other)
            return TruncSeries(self.top, [x * other for x in self.coeffs], self.low, self.zero)
        top = self.top + other.top
        cands = []
        if self.low is not None:
            cands.append(self.low + other.top)
        if other.low is not None:
            cands.append(self.top + other.low)
        low = max(cands) if cands else None
        stop = low if low is not None else self._bottom() + other._bottom()
        coeffs = []
        for k in range(top, stop - 1, -1):
            acc = self.zero
            # i runs over exponents of self
            i_hi = min(self.top, k - other._bottom_known())
            i_lo = max(self._bottom_known(), k - other.top)
            for i in range(i_hi, i_lo - 1, -1):
                a = self._get(i)
                b = other._get(k - i)
                acc = acc + a * b
            coeffs.append(acc)
        return TruncSeries(top, coeffs, low, self.zero)

    def _bottom_known(self):
        return self.low if self.low is not None else self._bottom()

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return TruncSeries(self.top, [other * x for x in self.coeffs], self.low, self.zero)

    def shift(self, c):
        """Expansion of f(u + c) in u^{-1}, to the same reliable range."""
        c = Q(c)
        if self.low is None:
            if self.coeffs and self._bottom() < 0:
                raise TruncationError("shifting an exact series with negative powers needs a truncation; call truncate first")
            bottom = min(0, self.top)
        else:
            bottom = self.low
        coeffs = []
        for j in range(self.top, bottom - 1, -1):
            acc = self.zero
            for k in range(self.top, j - 1, -1):
                fk = self._get(k)
                m = k - j
                w = binomial(k, m) * c ** m
                if w:
                    acc = acc + Fraction(w) * fk
            coeffs.append(acc)
        return TruncSeries(self.top, coeffs, self.low, self.zero)

    def inverse(self, one=Fraction(1)):
        """Multiplicative inverse; the leading coefficient must be an invertible scalar."""
        lead = self.coeffs[0] if self.coeffs else self.zero
        lead_q = _as_scalar(lead)
        if lead_q is None or lead_q == 0:
            raise ZeroDivisionError("leading coefficient is not an invertible scalar")
        inv0 = 1 / lead_q
        if self.low is None:
            raise TruncationError("inverse of an exact series needs a truncation; call truncate first")
        n = self.top - self.low + 1
        h = []
        for k in range(n):
            if k == 0:
                h.append(inv0 * one)
                continue
            acc = self.zero
            for i in range(1, min(k, len(self.coeffs) - 1) + 1):
                acc = acc + self.coeffs[i] * h[k - i]
            h.append(-inv0 * acc)
        return TruncSeries(-self.top, h, -self.top - n + 1, self.zero)

    def map(self, fn, zero=None):
        return TruncSeries(self.top, [fn(c) for c in self.coeffs], self.low, self.zero if zero is None else zero)

    def equal_to_order(self, other, is_zero=None):
        """Compare on the common reliable range."""
        diff = self - other
        return diff.is_zero(is_zero)

    def is_zero(self, is_zero=None):
        test = is_zero or (lambda c: not c)
        return all(test(c) for c in self.coeffs)

    def to_json(self):
        return json.dumps({"top": self.top, "order": self.order,
                           "coeffs": [fmt_q(c) for c in self.coeffs]}, sort_keys=True)

    @classmethod
    def from_json(cls, s):
        d = json.loads(s)
        coeffs = [parse_q(c) for c in d["coeffs"]]
        low = None if d["order"] is None else d["top"] - d["order"]
        # pad with zeros up to the declared reliable range
        if low is not None:
            coeffs += [Fraction(0)] * (d["top"] - low + 1 - len(coeffs))
        return cls(d["top"], coeffs, low)

    def __repr__(self):
        parts = [f"({c})u^{self.top - k}" for k, c in enumerate(self.coeffs) if c]
        tail = "" if self.low is None else f" + O(u^{self.low - 1})"
        return (" + ".join(parts) or "0") + tail


def _as_scalar(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    conv = getattr(x, "as_scalar", None)
    if conv is not None:
        return conv()
    return None


def series_shift(f, c):
    return f.shift(c)


def series_mul_inv(f, g=None, one=Fraction(1)):
    """f*g if g is given, else the inverse of f."""
    if g is None:
        return f.inverse(one)
    return f * g


def u_power_series(coeffs_by_exponent, low, zero=Fraction(0)):
    """Series from {exponent: coeff} reliable down to u^low."""
    top = max(list(coeffs_by_exponent) + [low])
    return TruncSeries(top, [coeffs_by_exponent.get(k, zero) for k in range(top, low - 1, -1)], low, zero)
