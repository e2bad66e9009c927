"""Cartan matrices of the finite, affine and A_infinity-window types."""


class CartanMatrix:
    """c_kk = 2 and c_kl = -(number of arrows between k and l) on the cyclic
    quiver Z/nZ. With a zero in the dimension vector the active nodes form a
    finite A-type window; with all entries positive it is affine of type
    A^(1)_{n-1} (for n = 2 this gives c_01 = -2)."""

    def __init__(self, n, d=None):
        self.n = n
        self.d = tuple(d) if d is not None else None
        if d is not None and all(x > 0 for x in d):
            self.type = "affine"
        elif d is not None and d[0] == 0:
            self.type = "finite"
        else:
            self.type = "window"

    def __call__(self, k, l):
        n = self.n
        k %= n
        l %= n
        c = 2 if k == l else 0
        if (k + 1) % n == l:
            c -= 1
        if (l + 1) % n == k:
            c -= 1
        return c

    def entries(self):
        return [[self(k, l) for l in range(self.n)] for k in range(self.n)]

    def active(self):
        if self.d is None:
            return list(range(self.n))
        return [l for l in range(self.n) if self.d[l] > 0]
