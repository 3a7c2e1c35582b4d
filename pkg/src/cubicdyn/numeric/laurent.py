"""Sparse Laurent polynomials in two variables u, v with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterator, Mapping

from ..errors import DivisionFailure, ZeroDenominator

try:  # C rationals make long division several times faster; Fraction is the fallback
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover
    _mpq = None

Exp = tuple[int, int]


class BiLaurent:
    """Immutable map from exponent pairs (i, j) to nonzero Fractions.

    Exponents may be negative. Terms are compared in lexicographic order on
    (i, j), a group order on Z², so leading terms are multiplicative.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, object] | None = None):
        clean: dict[Exp, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[(int(e[0]), int(e[1]))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exp, Fraction]) -> "BiLaurent":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "BiLaurent":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BiLaurent":
        return cls({(i, j): c})

    @classmethod
    def u(cls) -> "BiLaurent":
        return cls.monomial(1, 0)

    @classmethod
    def v(cls) -> "BiLaurent":
        return cls.monomial(0, 1)

    @property
    def terms(self) -> dict[Exp, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exp, Fraction]]:
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading(self) -> tuple[Exp, Fraction]:
        e = max(self._terms)
        return e, self._terms[e]

    def trailing(self) -> tuple[Exp, Fraction]:
        e = min(self._terms)
        return e, self._terms[e]

    @staticmethod
    def _coerce(o) -> "BiLaurent":
        if isinstance(o, BiLaurent):
            return o
        if isinstance(o, (int, Fraction)):
            return BiLaurent.const(o)
        raise TypeError(f"cannot combine BiLaurent with {type(o).__name__}")

    def __add__(self, o):
        try:
            o = self._coerce(o)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return BiLaurent._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BiLaurent._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, o):
        try:
            o = self._coerce(o)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        try:
            o = self._coerce(o)
        except TypeError:
            return NotImplemented
        # multiply integer numerators over a common denominator; far cheaper
        # than accumulating Fractions term by term
        a, da = _integral(self._terms)
        b, db = _integral(o._terms)
        out: dict[Exp, int] = {}
        for (i1, j1), c1 in a:
            for (i2, j2), c2 in b:
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, 0) + c1 * c2
        d = da * db
        return BiLaurent._raw({e: Fraction(c, d) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ZeroDenominator("negative power of a non-monomial Laurent polynomial")
            (i, j), c = self.leading()
            return BiLaurent.monomial(i * n, j * n, Fraction(c) ** n)
        out = BiLaurent.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, o):
        o = self._coerce(o)
        return exact_divide(self, o)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = BiLaurent.const(o)
        if not isinstance(o, BiLaurent):
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self._terms.items(), reverse=True):
            parts.append(f"{c}*u^{i}*v^{j}")
        return " + ".join(parts)

    def evaluate(self, u, v):
        """Substitute values for u and v (jets work too)."""
        total = 0
        for (i, j), c in self._terms.items():
            total = total + c * (u ** i) * (v ** j)
        return total

    def min_exponents(self) -> Exp:
        return (min(i for i, _ in self._terms), min(j for _, j in self._terms))


def exact_divide(num: BiLaurent, den: BiLaurent) -> BiLaurent:
    """Quotient q with num = q·den, or DivisionFailure with the remainder.

    Long division by leading terms. In a domain the lowest and highest u- and
    v-degrees are additive, so an exact quotient lives in a known finite box of
    exponents; the first quotient term outside the box proves the division
    inexact and the current remainder is reported.
    """
    if not den:
        raise ZeroDenominator("exact_divide by the zero Laurent polynomial")
    if not num:
        return BiLaurent()
    if den.is_monomial():
        (di, dj), dc = den.leading()
        return BiLaurent._raw({(i - di, j - dj): c / dc for (i, j), c in num.items()})
    lo_i, hi_i, lo_j, hi_j = _box(num)
    dlo_i, dhi_i, dlo_j, dhi_j = _box(den)
    box = (lo_i - dlo_i, hi_i - dhi_i, lo_j - dlo_j, hi_j - dhi_j)
    (li, lj), lc = den.leading()
    conv = _mpq or Fraction
    lc = conv(lc.numerator, lc.denominator)
    den_terms = [(e, conv(c.numerator, c.denominator)) for e, c in den.items()]
    rem = {e: conv(c.numerator, c.denominator) for e, c in num.items()}
    quot: dict = {}
    while rem:
        e = max(rem)
        qi, qj = e[0] - li, e[1] - lj
        if not (box[0] <= qi <= box[1] and box[2] <= qj <= box[3]):
            raise DivisionFailure(BiLaurent._raw(_to_fractions(rem)))
        qc = rem[e] / lc
        quot[(qi, qj)] = qc
        for (i, j), c in den_terms:
            k = (qi + i, qj + j)
            s = rem.get(k, 0) - qc * c
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return BiLaurent._raw(_to_fractions(quot))


def _to_fractions(terms: dict) -> dict:
    return {e: Fraction(int(c.numerator), int(c.denominator)) for e, c in terms.items()}


def _integral(terms: dict) -> tuple[list, int]:
    d = 1
    for c in terms.values():
        d = lcm(d, c.denominator)
    return [(e, c.numerator * (d // c.denominator)) for e, c in terms.items()], d


def _box(p: BiLaurent) -> tuple[int, int, int, int]:
    iis = [i for (i, _), _ in p.items()]
    jjs = [j for (_, j), _ in p.items()]
    return min(iis), max(iis), min(jjs), max(jjs)
