"""Families of birational maps of (ℂ*)² preserving du/u ∧ dv/v.

Elements act on pairs (u, v) through field operations only, so the same code
evaluates on rationals and on jets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .dynamics.harness import EQUAL, INCONCLUSIVE, UNEQUAL, Verdict
from .dynamics.maps import FactorList
from .errors import ChartDegenerate, ParseError, PoleHit, PolarLocus
from .numeric import Dual2, SeededSampler, as_q, is_zero, qstr, sample_rational, value_of


def _inv(t, what):
    if is_zero(t):
        raise PoleHit(f"{what} = 0")
    return 1 / t


def _ipow(t, n: int, what):
    return t ** n if n >= 0 else _inv(t, what) ** (-n)


class Elem:
    """Base class: ``self(u, v)`` evaluates, ``@`` composes (right acts first)."""

    def __call__(self, u, v):
        raise NotImplementedError

    def inverse(self) -> "Elem":
        raise NotImplementedError

    def __matmul__(self, other: "Elem") -> "Elem":
        return Composite((self, other))

    def label(self) -> str:
        return type(self).__name__


@dataclass(frozen=True)
class TorusElem(Elem):
    lam: Fraction
    mu: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", as_q(self.lam))
        object.__setattr__(self, "mu", as_q(self.mu))
        if self.lam == 0 or self.mu == 0:
            raise ValueError("torus parameters must be nonzero")

    def __call__(self, u, v):
        return (self.lam * u, self.mu * v)

    def inverse(self):
        return TorusElem(1 / self.lam, 1 / self.mu)

    def times(self, o: "TorusElem") -> "TorusElem":
        return TorusElem(self.lam * o.lam, self.mu * o.mu)

    def label(self):
        return f"t({qstr(self.lam)},{qstr(self.mu)})"


@dataclass(frozen=True)
class MonomialElem(Elem):
    """w_A: (u, v) ↦ (u^a v^b, u^c v^d) with A in SL2(Z)."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("exponent matrix must have determinant 1")

    def __call__(self, u, v):
        return (_ipow(u, self.a, "u") * _ipow(v, self.b, "v"),
                _ipow(u, self.c, "u") * _ipow(v, self.d, "v"))

    def inverse(self):
        return MonomialElem(self.d, -self.b, -self.c, self.a)

    def times(self, o: "MonomialElem") -> "MonomialElem":
        """w_A∘w_B = w_{AB}."""
        return MonomialElem(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def conj_torus(self, t: TorusElem) -> TorusElem:
        """w_A∘t(λ,μ)∘w_A⁻¹ = t(λ^a μ^b, λ^c μ^d)."""
        return TorusElem(t.lam ** self.a * t.mu ** self.b, t.lam ** self.c * t.mu ** self.d)

    def label(self):
        return f"w[[{self.a},{self.b}],[{self.c},{self.d}]]"


def scale_factor_list(r: FactorList, s) -> FactorList:
    """t ↦ r(s·t) as a factor list."""
    s = as_q(s)
    return FactorList(r.const * s ** r.power, r.power, tuple((nu * s, m) for nu, m in r.factors))


def eval_factor_list(r: FactorList, t):
    try:
        return r(t)
    except PolarLocus as exc:
        raise PoleHit(str(exc)) from exc


@dataclass(frozen=True)
class DeJonquieresElem(Elem):
    """dj1(λ, r): (u, v) ↦ (λu, r(u)·v)."""

    lam: Fraction
    r: FactorList = FactorList()

    def __post_init__(self):
        object.__setattr__(self, "lam", as_q(self.lam))
        if self.lam == 0:
            raise ValueError("λ must be nonzero")

    def __call__(self, u, v):
        return (self.lam * u, eval_factor_list(self.r, u) * v)

    def inverse(self):
        # (u, v) ↦ (u/λ, v / r(u/λ))
        return DeJonquieresElem(1 / self.lam, scale_factor_list(self.r, 1 / self.lam).inverse())

    def times(self, o: "DeJonquieresElem") -> "DeJonquieresElem":
        """self∘o = dj1(λλ', r(λ'·)·r')."""
        return DeJonquieresElem(self.lam * o.lam, scale_factor_list(self.r, o.lam).times(o.r))

    @property
    def unipotent(self) -> bool:
        return self.lam == 1 and self.r.power == 0 and self.r.at_zero() == 1

    def label(self):
        return f"dj1({qstr(self.lam)}; {format_factor_list(self.r)})"


@dataclass(frozen=True)
class Sigma(Elem):
    def __call__(self, u, v):
        return (_inv(u, "u"), _inv(v, "v"))

    def inverse(self):
        return self

    def label(self):
        return "sigma"


@dataclass(frozen=True)
class BlancP(Elem):
    """p: (u, v) ↦ (v, (1 + v)/u), of order five."""

    def __call__(self, u, v):
        return (v, (1 + v) * _inv(u, "u"))

    def inverse(self):
        return BlancPInv()

    def label(self):
        return "p"


@dataclass(frozen=True)
class BlancPInv(Elem):
    def __call__(self, u, v):
        return ((1 + u) * _inv(v, "v"), u)

    def inverse(self):
        return BlancP()

    def label(self):
        return "p^-1"


@dataclass(frozen=True)
class Composite(Elem):
    parts: tuple

    def __call__(self, u, v):
        for e in reversed(self.parts):
            u, v = e(u, v)
        return (u, v)

    def inverse(self):
        return Composite(tuple(e.inverse() for e in reversed(self.parts)))

    def label(self):
        return " . ".join(e.label() for e in self.parts)


sigma = Sigma()
blanc_p = BlancP()
sigma_inv = sigma


def apply(elem: Elem, point) -> tuple:
    u, v = (as_q(t) for t in point)
    return tuple(elem(u, v))


def power(elem: Elem, n: int) -> Elem:
    if n == 0:
        return TorusElem(1, 1)
    base = elem if n > 0 else elem.inverse()
    return Composite((base,) * abs(n))


def commutator(f: Elem, g: Elem) -> Elem:
    """[f, g] = f∘g∘f⁻¹∘g⁻¹."""
    return Composite((f, g, f.inverse(), g.inverse()))


def commutator_closed(f: DeJonquieresElem, g: DeJonquieresElem) -> DeJonquieresElem:
    """[f, g] as a single dj1 element, via the closed-form product."""
    return f.times(g).times(f.inverse()).times(g.inverse())


def log_symplectic_ratio(elem: Elem, point) -> Fraction:
    """Pullback of du/u ∧ dv/v divided by itself at ``point``."""
    u, v = (as_q(t) for t in point)
    if u == 0 or v == 0:
        raise ChartDegenerate("point on an axis")
    U, V = elem(Dual2(u, 1, 0), Dual2(v, 0, 1))
    U = U if isinstance(U, Dual2) else Dual2(U)
    V = V if isinstance(V, Dual2) else Dual2(V)
    if U.value == 0 or V.value == 0:
        raise ChartDegenerate("image on an axis")
    det = U.d1 * V.d2 - U.d2 * V.d1
    return det * u * v / (U.value * V.value)


# -- grammar: "t(2,3)", "w[[0,1],[-1,1]]", "dj1(2; u^1 * (1+3u))", "p", "sigma" --

_FACTOR = re.compile(r"^\((1)\s*([+-])\s*([0-9/]*)\s*\*?\s*u\)(?:\^(-?\d+))?$")
_UPOW = re.compile(r"^u(?:\^(-?\d+))?$")


def parse_factor_list(text: str) -> FactorList:
    const, pw, facs = Fraction(1), 0, {}
    text = text.strip()
    if not text:
        raise ParseError("empty factor list")
    for term in re.split(r"\s*\*\s*(?![^()]*\))", text):
        term = term.replace(" ", "")
        m = _UPOW.match(term)
        if m:
            pw += int(m.group(1) or 1)
            continue
        m = _FACTOR.match(term)
        if m:
            _, sign, coef, mult = m.groups()
            nu = as_q(coef or "1") * (-1 if sign == "-" else 1)
            facs[nu] = facs.get(nu, 0) + int(mult or 1)
            continue
        try:
            const *= as_q(term)
        except (TypeError, ValueError):
            raise ParseError(f"cannot read factor {term!r}") from None
    if const == 0:
        raise ParseError("factor list constant must be nonzero")
    return FactorList(const, pw, tuple(sorted((nu, m) for nu, m in facs.items() if m)))


def format_factor_list(r: FactorList) -> str:
    parts = []
    if r.const != 1 or (not r.power and not r.factors):
        parts.append(qstr(r.const))
    if r.power:
        parts.append(f"u^{r.power}")
    for nu, m in r.factors:
        sign = "-" if nu < 0 else "+"
        f = f"(1{sign}{qstr(abs(nu))}u)"
        parts.append(f if m == 1 else f"{f}^{m}")
    return " * ".join(parts)


_ELEM = re.compile(r"^\s*(?:(t)\(([^,()]+),([^,()]+)\)|(w)\[\[(-?\d+),(-?\d+)\],\[(-?\d+),(-?\d+)\]\]"
                   r"|(dj1)\(([^;]+);(.*)\)|(p)|(sigma))\s*(?:\^\s*(-?\d+))?\s*$")


def parse_elem(text: str) -> Elem:
    """One element, or a composition of elements joined by '.'."""
    parts = re.split(r"\s*\.\s*(?![^()\[\]]*[)\]])", text.strip())
    if len(parts) > 1:
        return Composite(tuple(parse_elem(p) for p in parts))
    m = _ELEM.match(text.replace(" ", "") if "dj1" not in text else text)
    if not m:
        raise ParseError(f"cannot parse element {text!r}")
    g = m.groups()
    try:
        if g[0]:
            e = TorusElem(as_q(g[1]), as_q(g[2]))
        elif g[3]:
            e = MonomialElem(*(int(x) for x in g[4:8]))
        elif g[8]:
            e = DeJonquieresElem(as_q(g[9].strip()), parse_factor_list(g[10]))
        elif g[11]:
            e = blanc_p
        else:
            e = sigma
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad element {text!r}: {exc}") from exc
    n = g[13]
    return power(e, int(n)) if n else e


# -- relation suite --

def _rand_point(s: SeededSampler):
    return (sample_rational(s, nonzero=True), sample_rational(s, nonzero=True))


def _rand_sl2z(s: SeededSampler, h: int = 5) -> MonomialElem:
    while True:
        a, b = s.randint(-h, h), s.randint(-h, h)
        if gcd(a, b) != 1:
            continue
        # extend (a, b) to a row of an SL2(Z) matrix via the Euclid cofactors
        x0, y0, r0, r1 = 1, 0, a, b
        x1, y1 = 0, 1
        while r1:
            q = r0 // r1
            r0, r1, x0, x1, y0, y1 = r1, r0 - q * r1, x1, x0 - q * x1, y1, y0 - q * y1
        # a·x0 + b·y0 = r0 = ±1
        if r0 < 0:
            x0, y0 = -x0, -y0
        k = s.randint(-2, 2)
        c, d = -y0 + k * a, x0 + k * b
        return MonomialElem(a, b, c, d)


def _rand_factor_list(s: SeededSampler, unipotent: bool) -> FactorList:
    facs = {}
    for _ in range(s.randint(1, 3)):
        nu = sample_rational(s, nonzero=True, height=5)
        m = s.choice([-2, -1, 1, 2])
        facs[nu] = facs.get(nu, 0) + m
    if unipotent:
        return FactorList(Fraction(1), 0, tuple(sorted((k, v) for k, v in facs.items() if v)))
    return FactorList(sample_rational(s, nonzero=True, height=5), s.randint(-2, 2),
                      tuple(sorted((k, v) for k, v in facs.items() if v)))


def _check_pointwise(name, trials, sampler, pairs_fn) -> Verdict:
    done = skipped = 0
    i = 0
    while done < trials:
        if skipped > 20 * trials:
            return Verdict(INCONCLUSIVE, done, skipped, name=name)
        s = sampler.split(i)
        i += 1
        lhs, rhs = pairs_fn(s)
        pt = _rand_point(s)
        try:
            a, b = apply(lhs, pt), apply(rhs, pt)
        except ZeroDivisionError:
            skipped += 1
            continue
        done += 1
        if a != b:
            return Verdict(UNEQUAL, done, skipped,
                           {"point": [qstr(t) for t in pt], "left": [qstr(t) for t in a],
                            "right": [qstr(t) for t in b], "lhs": lhs.label(), "rhs": rhs.label()}, name)
    return Verdict(EQUAL, done, skipped, name=name)


IDENTITY = TorusElem(1, 1)


def family_samplers() -> dict:
    """name -> (element factory from a sampler, expected log-symplectic sign)."""
    return {
        "T": (lambda s: TorusElem(sample_rational(s, nonzero=True), sample_rational(s, nonzero=True)), 1),
        "W": (_rand_sl2z, 1),
        "B1": (lambda s: DeJonquieresElem(sample_rational(s, nonzero=True), _rand_factor_list(s, False)), 1),
        "U1": (lambda s: DeJonquieresElem(1, _rand_factor_list(s, True)), 1),
        # σ inverts both coordinates, so du/u∧dv/v is preserved and B1⁻ is symplectic too
        "B1-": (lambda s: DeJonquieresElem(sample_rational(s, nonzero=True), _rand_factor_list(s, False)) @ sigma, 1),
        "p": (lambda s: blanc_p, 1),
    }


def family_ratios(sampler: SeededSampler, trials: int = 50) -> dict:
    """Set of observed log-symplectic ratios per family."""
    out = {}
    for name, (make, _) in family_samplers().items():
        seen = set()
        done = i = 0
        while done < trials and i < 20 * trials:
            s = sampler.split(1000 * len(out) + i)
            i += 1
            try:
                seen.add(log_symplectic_ratio(make(s), _rand_point(s)))
            except ZeroDivisionError:
                continue
            done += 1
        out[name] = seen
    return out


def group_relations_suite(sampler: SeededSampler, trials: int = 50) -> list:
    out = []
    out.append(_check_pointwise("p^5 = id", trials, sampler.split(1),
                                lambda s: (power(blanc_p, 5), IDENTITY)))
    out.append(_check_pointwise("sigma^2 = id", trials, sampler.split(2),
                                lambda s: (sigma @ sigma, IDENTITY)))

    def w_hom(s):
        A, B = _rand_sl2z(s), _rand_sl2z(s)
        return (A @ B, A.times(B))

    out.append(_check_pointwise("w_A . w_B = w_AB", trials, sampler.split(3), w_hom))

    def normalizer(s):
        A = _rand_sl2z(s, 3)
        t = TorusElem(sample_rational(s, nonzero=True, height=4), sample_rational(s, nonzero=True, height=4))
        return (Composite((A, t, A.inverse())), A.conj_torus(t))

    out.append(_check_pointwise("w_A . t . w_A^-1 = t'", trials, sampler.split(4), normalizer))

    def abelian(s):
        f = DeJonquieresElem(1, _rand_factor_list(s, True))
        g = DeJonquieresElem(1, _rand_factor_list(s, True))
        return (commutator(f, g), IDENTITY)

    out.append(_check_pointwise("U1 abelian", trials, sampler.split(5), abelian))

    def dj_closed(s):
        f = DeJonquieresElem(sample_rational(s, nonzero=True), _rand_factor_list(s, False))
        g = DeJonquieresElem(sample_rational(s, nonzero=True), _rand_factor_list(s, False))
        return (f @ g, f.times(g))

    out.append(_check_pointwise("dj1 . dj1 = dj1 (closed form)", trials, sampler.split(6), dj_closed))

    # commutators in B1 fix u; with r finite and nonzero at 0 the v-factor s has s(0) = 1
    # and degree 0, i.e. a finite nonzero limit at infinity
    bad = None
    for i in range(trials):
        s = sampler.split(7000 + i)
        regular = i % 2 == 0
        f = DeJonquieresElem(sample_rational(s, nonzero=True), _rand_factor_list(s, regular))
        g = DeJonquieresElem(sample_rational(s, nonzero=True), _rand_factor_list(s, regular))
        c = commutator_closed(f, g)
        if c.lam != 1 or c.r.degree() != 0 or (regular and c.r.at_zero() != 1):
            bad = {"f": f.label(), "g": g.label(), "commutator": c.label()}
            break
    out.append(Verdict(EQUAL if bad is None else UNEQUAL, trials, 0, bad, "[B1, B1] fixes u"))

    ratios = family_ratios(sampler.split(8), trials)
    wrong = {k: sorted(map(qstr, v)) for k, v in ratios.items()
             if v != {family_samplers()[k][1]}}
    out.append(Verdict(EQUAL if not wrong else UNEQUAL, trials, 0, wrong or None, "log-symplectic signs"))
    return out
