"""Two-seed forward-mode jets.

A :class:`Dual2` is ``value + d1·ε₁ + d2·ε₂`` with ε_iε_j = 0. Any map built
from field operations can be evaluated on jets to get exact first partials,
which is how every Jacobian in the package is computed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from ..errors import ZeroValueDivision


def _lift(x):
    if isinstance(x, Dual2):
        return x
    return Dual2(x, 0, 0)


class Dual2:
    __slots__ = ("value", "d1", "d2")

    def __init__(self, value, d1=0, d2=0):
        self.value = Fraction(value)
        self.d1 = Fraction(d1)
        self.d2 = Fraction(d2)

    def __repr__(self):
        return f"Dual2({self.value}, {self.d1}, {self.d2})"

    def __add__(self, o):
        if not isinstance(o, Dual2):
            if isinstance(o, (int, Fraction)):
                return Dual2(self.value + o, self.d1, self.d2)
            return NotImplemented
        return Dual2(self.value + o.value, self.d1 + o.d1, self.d2 + o.d2)

    __radd__ = __add__

    def __neg__(self):
        return Dual2(-self.value, -self.d1, -self.d2)

    def __pos__(self):
        return self

    def __sub__(self, o):
        if not isinstance(o, (Dual2, int, Fraction)):
            return NotImplemented
        return self + (-_lift(o))

    def __rsub__(self, o):
        if not isinstance(o, (int, Fraction)):
            return NotImplemented
        return _lift(o) - self

    def __mul__(self, o):
        if not isinstance(o, Dual2):
            if isinstance(o, (int, Fraction)):
                return Dual2(self.value * o, self.d1 * o, self.d2 * o)
            return NotImplemented
        a, b = self, o
        return Dual2(a.value * b.value,
                     a.value * b.d1 + a.d1 * b.value,
                     a.value * b.d2 + a.d2 * b.value)

    __rmul__ = __mul__

    def reciprocal(self):
        if self.value == 0:
            raise ZeroValueDivision(f"division by a jet with zero value: {self!r}")
        inv = 1 / self.value
        return Dual2(inv, -self.d1 * inv * inv, -self.d2 * inv * inv)

    def __truediv__(self, o):
        if isinstance(o, Dual2):
            return self * o.reciprocal()
        if isinstance(o, (int, Fraction)):
            if o == 0:
                raise ZeroValueDivision(f"division of {self!r} by zero")
            return self * (1 / Fraction(o))
        return NotImplemented

    def __rtruediv__(self, o):
        if not isinstance(o, (int, Fraction)):
            return NotImplemented
        return self.reciprocal() * o

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.reciprocal() ** (-n)
        if n == 0:
            return Dual2(1)
        pn1 = self.value ** (n - 1)
        return Dual2(self.value ** n, n * pn1 * self.d1, n * pn1 * self.d2)

    def __eq__(self, o):
        if isinstance(o, Dual2):
            return (self.value, self.d1, self.d2) == (o.value, o.d1, o.d2)
        if isinstance(o, (int, Fraction)):
            return self.value == o and self.d1 == 0 and self.d2 == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.d1, self.d2))


def value_of(x) -> Fraction:
    """Value part of a jet, or the scalar itself."""
    return x.value if isinstance(x, Dual2) else Fraction(x)


def is_zero(x) -> bool:
    return value_of(x) == 0


def jet_eval(f: Callable, point: Sequence, seeds: tuple[int, int] = (0, 1)):
    """Evaluate ``f(*point)`` seeding coordinates ``seeds`` with ε₁ and ε₂.

    ``f`` may return a scalar or a sequence; the result mirrors that shape as
    ``(value, partial1, partial2)`` triples.
    """
    i, j = seeds
    args = []
    for k, x in enumerate(point):
        args.append(Dual2(x, 1 if k == i else 0, 1 if k == j else 0))
    out = f(*args)
    if isinstance(out, (list, tuple)):
        return tuple(_triple(o) for o in out)
    return _triple(out)


def _triple(o):
    o = _lift(o)
    return (o.value, o.d1, o.d2)


def jacobian(f: Callable, point: Sequence) -> list[list[Fraction]]:
    """Full Jacobian of a vector-valued ``f`` using pairs of seeds."""
    n = len(point)
    cols: dict[int, list[Fraction]] = {}
    for start in range(0, n, 2):
        i = start
        j = start + 1 if start + 1 < n else -1
        res = jet_eval(f, point, (i, j))
        if not isinstance(res[0], tuple):
            res = (res,)
        cols[i] = [r[1] for r in res]
        if j >= 0:
            cols[j] = [r[2] for r in res]
    m = len(cols[0])
    return [[cols[c][r] for c in range(n)] for r in range(m)]
