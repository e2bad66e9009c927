"""Membership in commutative polynomial ideals via Groebner normal forms.

The constraint ideals of the classical reduction are handled here: after the
diagonal moment condition e' = mu - e is substituted, membership of an
arbitrary polynomial is decided by its normal form with respect to a reduced
Groebner basis (grevlex, with variables ordered q < p < f < e). That order is
markedly faster than the default one for the cyclic shapes.
"""

from fractions import Fraction

from sympy import QQ
from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import grevlex
from sympy.polys.rings import ring

from .poly import MultiPoly


class GroebnerIdeal:
    def __init__(self, variables, generators):
        self.variables = tuple(variables)
        self.generators = [g.with_variables(self.variables) for g in generators if not g.is_zero()]
        if self.variables:
            self.ring = ring(",".join(self.variables), QQ, grevlex)[0]
        else:
            self.ring = None
        self._basis = None

    def _to_ring(self, h):
        h = h.with_variables(self.variables)
        return self.ring.from_dict({e: QQ(c.numerator, c.denominator) for e, c in h.terms.items()})

    def _from_ring(self, r):
        return MultiPoly(self.variables, {e: Fraction(int(c.numerator), int(c.denominator))
                                          for e, c in r.terms()})

    @property
    def basis(self):
        if self._basis is None:
            if not self.generators:
                self._basis = []
            else:
                self._basis = groebner([self._to_ring(g) for g in self.generators], self.ring)
        return self._basis

    def normal_form(self, h):
        if h.is_zero():
            return MultiPoly.zero(self.variables)
        extra = set(h.support_vars()) - set(self.variables)
        if extra:
            raise ValueError(f"polynomial uses variables outside the ideal's ring: {sorted(extra)}")
        if not self.basis:
            return h.with_variables(self.variables)
        return self._from_ring(self._to_ring(h).rem(self.basis))

    def contains(self, h):
        return self.normal_form(h).is_zero()

    def is_proper(self):
        return not any(g.is_ground and g for g in self.basis)
