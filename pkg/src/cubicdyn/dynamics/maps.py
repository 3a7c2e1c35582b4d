"""Birational maps between the cubic surfaces, as composable values.

Every map is a :class:`SurfaceMap` whose ``fn(x, params)`` is written with
plain field operations, so the same code evaluates on rationals and on
:class:`~cubicdyn.numeric.Dual2` jets (used for Jacobians).

Charts on C_V come from the cluster coordinates. With z1 = x1x2 − e0::

    p1 = (y1, z1) = (x1, z1)        q1 = (z1, y2) = (z1, x2)
    p2 = ι∘q1∘σ1                    q0 = ι∘p1∘σ2
    p_{n+2} = p_n∘g⁻¹               q_{n+2} = q_n∘g⁻¹

so p_n = (y_n, z_n) and q_n = (z_n, y_{n+1}) for every integer n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from ..errors import ChartDegenerate, PolarLocus, ZeroDenominator
from ..numeric import as_q, is_zero
from ..surfaces import V, VI, ParamsV, ParamsVI, SurfacePoint, lift_x3


def _div(a, b, exc=ZeroDenominator, what="denominator"):
    if is_zero(b):
        raise exc(f"{what} vanishes")
    return a / b


def _same(p):
    return p


@dataclass(frozen=True)
class SurfaceMap:
    """A rational map between cubic surfaces.

    ``fn(x, params)`` returns the image coordinates; ``transport(params)``
    returns the target parameters. ``sign`` is the declared symplectic sign
    (None when undeclared).
    """

    name: str
    fn: Callable
    source: str = V
    target: str = V
    transport: Callable = _same
    sign: int | None = None

    def raw(self, x, params):
        return self.fn(x, params)

    def __call__(self, p: SurfacePoint) -> SurfacePoint:
        if p.family != self.source:
            raise ValueError(f"{self.name} expects a C_{self.source} point")
        out = self.fn(p.x, p.params)
        return SurfacePoint(self.target, out, self.transport(p.params))

    def compose(self, other: "SurfaceMap") -> "SurfaceMap":
        """self∘other: other is applied first."""
        f, g = self, other

        def fn(x, P):
            return f.fn(g.fn(x, P), g.transport(P))

        sign = None if f.sign is None or g.sign is None else f.sign * g.sign
        return SurfaceMap(f"{f.name} . {g.name}", fn, g.source, f.target,
                          lambda P: f.transport(g.transport(P)), sign)

    __matmul__ = compose

    def __repr__(self):
        return f"SurfaceMap({self.name})"


def identity(family: str = V) -> SurfaceMap:
    return SurfaceMap("id", lambda x, P: tuple(x), family, family, _same, 1)


def compose_all(maps: Sequence[SurfaceMap]) -> SurfaceMap:
    """maps[0]∘maps[1]∘…; the last one is applied first."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = m @ out
    return out


# -- tame dynamics on C_V --

def _sigma1(x, P):
    x1, x2, x3 = x
    return (-x1 - x2 * x3 + P.theta[0], x2, x3)


def _sigma2(x, P):
    x1, x2, x3 = x
    return (x1, -x2 - x1 * x3 + P.theta[1], x3)


sigma1 = SurfaceMap("sigma1", _sigma1, sign=-1)
sigma2 = SurfaceMap("sigma2", _sigma2, sign=-1)


def _g(x, P):
    return _sigma1(_sigma2(x, P), P)


def _g_inv(x, P):
    return _sigma2(_sigma1(x, P), P)


tame_g = SurfaceMap("g", _g, sign=1)
tame_g_inv = SurfaceMap("g^-1", _g_inv, sign=1)


def sigma(i: int) -> SurfaceMap:
    return {1: sigma1, 2: sigma2}[i]


def _g_power(x, P, m: int):
    step = _g if m > 0 else _g_inv
    for _ in range(abs(m)):
        x = step(x, P)
    return x


def g_power(m: int) -> SurfaceMap:
    return SurfaceMap(f"g^{m}", lambda x, P: _g_power(x, P, m), sign=1)


def pure_braid(x, P):
    """The closed form of the pure braid over s3, s4 on C_V."""
    x1, x2, x3 = x
    t1, t2 = P.theta[0], P.theta[1]
    return (x1 * x3 * x3 + x2 * x3 - x1 - t2 * x3 + t1, -x1 * x3 - x2 + t2, x3)


def _b34(x, P):
    x1, x2, x3 = x
    e0 = P.e0
    return ((-x2 - x1 * x3 + P.theta[1]) / e0, x1 / e0, x3)


# ratio is +1 identically: a coordinate swap (-1) after sigma2 (-1), and the
# 1/e0^2 Jacobian factor cancels the rescaled dF/dx3 of the target cubic
half_braid_b34 = SurfaceMap("b34", _b34, transport=lambda P: P.minus(), sign=1)


def _b34_inv(x, P):
    # b34 squared is g, so its inverse is b34 after g^-1
    return _b34(_g_inv(x, P), P)


half_braid_b34_inv = SurfaceMap("b34^-1", _b34_inv, transport=lambda P: P.minus(), sign=1)


# -- braid dynamics on C_VI --

_HIJ = {(1, 2): (1, 2, 3), (2, 3): (2, 3, 1), (3, 1): (3, 1, 2)}


def _reflect(x, theta, i):
    """ρ_i: x_i ↦ −x_i − x_j x_k + θ_i (the other two coordinates fixed)."""
    y = list(x)
    j, k = [t for t in (0, 1, 2) if t != i]
    y[i] = -x[i] - x[j] * x[k] + theta[i]
    return tuple(y)


def braid_h_raw(ij, x, theta):
    """h_{i,j} on C_VI, written as ρ_i∘ρ_j."""
    i, j, _ = _HIJ[ij]
    return _reflect(_reflect(x, theta, j - 1), theta, i - 1)


def braid_h_inv_raw(ij, x, theta):
    i, j, _ = _HIJ[ij]
    return _reflect(_reflect(x, theta, i - 1), theta, j - 1)


def braid_h_display(ij, x, theta):
    """The expanded polynomial form of h_{i,j}, kept as an independent oracle."""
    i, j, k = (t - 1 for t in _HIJ[ij])
    xi, xj, xk = x[i], x[j], x[k]
    ti, tj = theta[i], theta[j]
    y = [None, None, None]
    y[i] = -xi + xj * xk + xi * xk * xk - tj * xk + ti
    y[j] = -xj - xi * xk + tj
    y[k] = xk
    return tuple(y)


def braid_h(ij) -> SurfaceMap:
    ij = tuple(ij)
    return SurfaceMap(f"h{ij[0]}{ij[1]}", lambda x, P: braid_h_raw(ij, x, P.theta), VI, VI, _same, 1)


def braid_h_inv(ij) -> SurfaceMap:
    ij = tuple(ij)
    return SurfaceMap(f"h{ij[0]}{ij[1]}^-1", lambda x, P: braid_h_inv_raw(ij, x, P.theta), VI, VI, _same, 1)


# -- confluence morphisms Φ_κ --

def kappa_traces(P: ParamsV, kappa) -> tuple:
    kappa = as_q(kappa)
    e0 = P.e0
    return (kappa + 1 / kappa, e0 / kappa + kappa / e0, P.a3, P.a4)


def kappa_params(P: ParamsV, kappa) -> ParamsVI:
    kappa = as_q(kappa)
    e = None
    if P.e3 is not None and P.e4 is not None:
        e = (kappa, P.e0 / kappa, P.e3, P.e4)
    return ParamsVI.from_traces(*kappa_traces(P, kappa), e=e)


def _phi(x, P, kappa):
    x1, x2, x3 = x
    e0, a3, a4 = P.e0, P.a3, P.a4
    k = kappa
    X1 = k / e0 * x1 + x2 / k
    X2 = -k / e0 * x1 * x3 + x1 / k - k / e0 * x2 + a3 * k + a4 * k / e0
    return (X1, X2, x3)


def phi_kappa(kappa) -> SurfaceMap:
    kappa = as_q(kappa)
    # against dx1^dx2/F_x3 on both sides the ratio is -1 for every kappa
    return SurfaceMap(f"phi({kappa})", lambda x, P: _phi(x, P, kappa), V, VI,
                      lambda P: kappa_params(P, kappa), -1)


def phi_kappa_pole(P: ParamsV, kappa) -> Fraction:
    """x_{3,κ} value of the excluded plane: e0⁻¹κ² + e0κ⁻²."""
    kappa = as_q(kappa)
    return kappa * kappa / P.e0 + P.e0 / (kappa * kappa)


def _phi_inv(x, P: ParamsV, kappa):
    X1, X2, X3 = x
    e0, a3, a4 = P.e0, P.a3, P.a4
    k = kappa
    den = X3 - (k * k / e0 + e0 / (k * k))
    if is_zero(den):
        raise PolarLocus("x3 = e0⁻¹κ² + e0κ⁻²: the pair (M1, M2) is reducible there")
    x1 = (-k * X1 - e0 / k * X2 + a3 * e0 + a4) / den
    x2 = (k * X1 * X3 - e0 / k * X1 + k * X2 - a3 * k * k - a4 * k * k / e0) / den
    return (x1, x2, X3)


def phi_kappa_inv(kappa, target: ParamsV) -> SurfaceMap:
    """Inverse of Φ_κ onto C_V(θ⁺) for the given target parameters."""
    kappa = as_q(kappa)
    return SurfaceMap(f"phi({kappa})^-1", lambda x, P: _phi_inv(x, target, kappa), VI, V,
                      lambda P: target, -1)


# -- charts --

def _z1(x, P):
    return x[0] * x[1] - P.e0


def p1(x, P):
    return (x[0], _z1(x, P))


def q1(x, P):
    return (_z1(x, P), x[1])


def p1_inv(y, z, P):
    x2 = _div(z + P.e0, y, ChartDegenerate, "y1")
    if is_zero(z):
        raise ChartDegenerate("z1 = 0: x3 is not determined by (y1, z1)")
    return (y, x2, lift_x3(y, x2, P.theta))


def q1_inv(z, y, P):
    x1 = _div(z + P.e0, y, ChartDegenerate, "y2")
    if is_zero(z):
        raise ChartDegenerate("z1 = 0: x3 is not determined by (z1, y2)")
    return (x1, y, lift_x3(x1, y, P.theta))


def p2(x, P):
    return (x[1], _z1(_sigma1(x, P), P))


def p2_inv(y, z, P):
    return _sigma1(q1_inv(z, y, P), P)


def q0(x, P):
    return (_z1(_sigma2(x, P), P), x[0])


def q0_inv(z, y, P):
    return _sigma2(p1_inv(y, z, P), P)


def chart_p(n: int, x, P):
    """(y_n, z_n) at x."""
    m, r = divmod(n - 1, 2)
    base = p1 if r == 0 else p2
    return base(_g_power(x, P, -m), P)


def chart_p_inv(n: int, y, z, P):
    m, r = divmod(n - 1, 2)
    base = p1_inv if r == 0 else p2_inv
    return _g_power(base(y, z, P), P, m)


def chart_q(n: int, x, P):
    """(z_n, y_{n+1}) at x."""
    m, r = divmod(n, 2)
    base = q0 if r == 0 else q1
    return base(_g_power(x, P, -m), P)


def chart_q_inv(n: int, z, y, P):
    m, r = divmod(n, 2)
    base = q0_inv if r == 0 else q1_inv
    return _g_power(base(z, y, P), P, m)


def p1_inverse(y1, z1, P: ParamsV) -> SurfacePoint:
    y1, z1 = as_q(y1), as_q(z1)
    if y1 == 0 or z1 == 0:
        raise ZeroDenominator("p1⁻¹ needs y1 ≠ 0 and z1 ≠ 0")
    return SurfacePoint(V, p1_inv(y1, z1, P), P)


def in_p_chart(name: str, n: int, action: Callable, sign: int = 1) -> SurfaceMap:
    """Map acting as ``action(y, z, P)`` in the chart p_n = (y_n, z_n)."""

    def fn(x, P):
        y, z = chart_p(n, x, P)
        Y, Z = action(y, z, P)
        return chart_p_inv(n, Y, Z, P)

    return SurfaceMap(name, fn, sign=sign)


def in_q_chart(name: str, n: int, action: Callable, sign: int = 1) -> SurfaceMap:
    """Map acting as ``action(z, y, P)`` in the chart q_n = (z_n, y_{n+1})."""

    def fn(x, P):
        z, y = chart_q(n, x, P)
        Z, Y = action(z, y, P)
        return chart_q_inv(n, Z, Y, P)

    return SurfaceMap(name, fn, sign=sign)


# -- confluent family g_{i,j}(κ) --

def _g23(x, P, kappa):
    x1, x2, _ = x
    e0 = P.e0
    k2 = kappa * kappa
    X1 = _div(e0, x2, PolarLocus, "x2")
    X2 = x2 - k2 / x2 + k2 / e0 * x1
    if is_zero(X1 * X2 - e0):
        raise ChartDegenerate("X1·X2 = e0: cannot lift X3")
    return (X1, X2, lift_x3(X1, X2, P.theta))


def g23(kappa) -> SurfaceMap:
    kappa = as_q(kappa)
    return SurfaceMap(f"g23({kappa})", lambda x, P: _g23(x, P, kappa), sign=1)


def g23_chart(kappa) -> SurfaceMap:
    """g23(κ) from its (z1, y2)-chart display: (κ²z1/y2², (1 + κ²z1/(e0y2²))y2)."""
    k2 = as_q(kappa) ** 2

    def act(z, y, P):
        w = _div(k2 * z, y * y, PolarLocus, "y2")
        return (w, (1 + w / P.e0) * y)

    return in_q_chart(f"g23c({kappa})", 1, act, 1)


def g32(kappa) -> SurfaceMap:
    k2 = as_q(kappa) ** 2

    def act(y, z, P):
        e0 = P.e0
        return (y + _div(e0 * z, k2 * y, PolarLocus, "y1"), e0 * e0 * z / (k2 * y * y))

    return in_p_chart(f"g32({kappa})", 1, act, 1)


def g31(kappa) -> SurfaceMap:
    k2 = as_q(kappa) ** 2

    def act(z, y, P):
        w = _div(k2 * z, y * y, PolarLocus, "y3")
        return (w, (1 + w / P.e0) * y)

    return in_q_chart(f"g31({kappa})", 2, act, 1)


def g13(kappa) -> SurfaceMap:
    k2 = as_q(kappa) ** 2

    def act(y, z, P):
        e0 = P.e0
        return (y + _div(e0 * z, k2 * y, PolarLocus, "y2"), e0 * e0 * z / (k2 * y * y))

    return in_p_chart(f"g13({kappa})", 2, act, 1)


# -- canonical dynamics: Stokes maps, tori, formal monodromy --

def _one_plus(z, P):
    w = 1 + z / P.e0
    if is_zero(w):
        raise PolarLocus("1 + z/e0 = 0")
    return w


def stokes_s(k: int) -> SurfaceMap:
    """s_k: (y_k, z_k) ↦ (y_k(1 + z_k/e0), z_k)."""
    return in_p_chart(f"s{k}", k, lambda y, z, P: (y * _one_plus(z, P), z), 1)


def stokes_s_inv(k: int) -> SurfaceMap:
    return in_p_chart(f"s{k}^-1", k, lambda y, z, P: (y / _one_plus(z, P), z), 1)


def torus_t(k: int, lam) -> SurfaceMap:
    """t_k(λ): y_k fixed, z_k ↦ λz_k (equivalently z_{k-1} ↦ z_{k-1}/λ)."""
    lam = as_q(lam)
    if lam == 0:
        raise ValueError("torus parameter must be nonzero")
    return in_p_chart(f"t{k}({lam})", k, lambda y, z, P: (y, lam * z), 1)


@dataclass(frozen=True)
class FactorList:
    """r(t) = c · t^m · ∏ (1 + ν t)^{n_ν}, exactly evaluable and invertible."""

    const: Fraction = Fraction(1)
    power: int = 0
    factors: tuple = ()   # ((ν, multiplicity), ...)

    def __call__(self, t):
        out = self.const * (t ** self.power if self.power >= 0 else 1)
        if self.power < 0:
            out = _div(out, t ** (-self.power), PolarLocus, "t")
        for nu, mult in self.factors:
            base = 1 + nu * t
            if mult >= 0:
                out = out * base ** mult
            else:
                out = _div(out, base ** (-mult), PolarLocus, f"1 + {nu}t")
        return out

    def inverse(self) -> "FactorList":
        return FactorList(1 / self.const, -self.power, tuple((nu, -m) for nu, m in self.factors))

    def times(self, other: "FactorList") -> "FactorList":
        merged: dict = {}
        for nu, m in self.factors + other.factors:
            merged[nu] = merged.get(nu, 0) + m
        return FactorList(self.const * other.const, self.power + other.power,
                          tuple(sorted((nu, m) for nu, m in merged.items() if m)))

    def at_zero(self) -> Fraction:
        if self.power < 0:
            raise PolarLocus("r has a pole at 0")
        return Fraction(0) if self.power > 0 else self.const

    def degree(self) -> int:
        return self.power + sum(m for nu, m in self.factors if nu != 0)


def functional_torus(k: int, r: FactorList) -> SurfaceMap:
    """(z_{k-1}, y_k) ↦ (z_{k-1}·r(y_k), y_k)."""
    return in_q_chart(f"T{k}[r]", k - 1, lambda z, y, P: (z * r(y), y), 1)


def _mhat(y, z, P):
    e0 = P.e0
    return (y, _div(e0 * e0 * z, y ** 4, ChartDegenerate, "y2"))


def _mhat_inv(y, z, P):
    return (y, y ** 4 * z / (P.e0 * P.e0))


def _mhat_half(y, z, P):
    return (y, y * y * z / P.e0)


formal_monodromy = in_p_chart("mhat", 2, _mhat, 1)
formal_monodromy_inv = in_p_chart("mhat^-1", 2, _mhat_inv, 1)
formal_monodromy_sqrt = in_p_chart("mhat_half", 2, _mhat_half, 1)


def formal_monodromy_sqrt_inv_map() -> SurfaceMap:
    return in_p_chart("mhat_half^-1", 2,
                      lambda y, z, P: (y, _div(P.e0 * z, y * y, ChartDegenerate, "y2")), 1)


def stokes_s1_closed(x, P):
    """s1 written in x-coordinates; regular along z1 = 0, where the p1 chart is not.

    With w = 1 + z1/e0 the image is (x1·w, x2/w, x3 + δ), δ being the
    divided difference of the x3-free part of F_V over z1.
    """
    x1, x2, x3 = x
    t1, t2, e0, _ = P.theta
    w = _one_plus(x1 * x2 - e0, P)
    shift = (-x1 * x1 * (1 + w) + x2 * x2 * (1 + w) / (w * w) + t1 * x1 - t2 * x2 / w) / e0
    return (x1 * w, x2 / w, x3 + shift)


def delta_translation_displayed(P, y1):
    """θ1·y1/e0 − θ2/y1: the x3-shift of s1 along a Δ-line as usually quoted."""
    t1, t2, e0, _ = P.theta
    return t1 * y1 / e0 - t2 / y1


def delta_translation(P, y1):
    """The exact x3-shift of s1 along the Δ-line x1 = y1, x2 = e0/y1."""
    e0 = P.e0
    return delta_translation_displayed(P, y1) + 2 * (e0 * e0 - y1 ** 4) / (e0 * y1 * y1)
