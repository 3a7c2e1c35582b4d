"""The cubic surfaces C_VI(θ) and C_V(θ): parameters, points, lines, Kaneko points.

Both families are affine cubics in (x1, x2, x3)::

    F_VI = x1x2x3 + x1² + x2² + x3² − θ1x1 − θ2x2 − θ3x3 + θ4
    F_V  = x1x2x3 + x1² + x2²        − θ1x1 − θ2x2 − θ3x3 + θ4

For C_V the coefficient θ3 equals e0, and a point is determined by (x1, x2)
off the polar locus x1x2 = e0, which is how points are sampled and lifted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from .errors import (ChartDegenerate, DegenerateConfiguration, Irreducible,
                     IrrationalSplitting, NonGenericParams, NotOnSurface,
                     PolarLocus, SingularSystem)
from .numeric import Dual2, SeededSampler, as_q, is_zero, qstr, rational_sqrt, sample_rational, value_of

V = "V"
VI = "VI"


def c_value(alpha, beta) -> Fraction:
    """c_{α,β} = α/β + β/α."""
    alpha, beta = as_q(alpha), as_q(beta)
    return alpha / beta + beta / alpha


def _trace(e: Fraction) -> Fraction:
    return e + 1 / e


def theta_vi(a: Sequence) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    a1, a2, a3, a4 = (as_q(t) for t in a)
    return (a1 * a4 + a2 * a3,
            a2 * a4 + a3 * a1,
            a3 * a4 + a1 * a2,
            a1 * a2 * a3 * a4 + a1 ** 2 + a2 ** 2 + a3 ** 2 + a4 ** 2 - 4)


def theta_v(e0, a3, a4) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    return (a3 + e0 * a4, a4 + e0 * a3, e0, e0 ** 2 + e0 * a3 * a4 + 1)


def _monic_quadratic_resultant(p1, p0, q1, q0) -> Fraction:
    # Res(t² + p1 t + p0, t² + q1 t + q0)
    return (p0 - q0) ** 2 - (p1 - q1) * (p0 * q1 - q0 * p1)


class ParamsVI:
    """Parameters of C_VI: traces a1..a4 and, when rational, eigenvalues e1..e4."""

    __slots__ = ("a", "e", "theta")

    def __init__(self, e1, e2, e3, e4):
        e = tuple(as_q(t) for t in (e1, e2, e3, e4))
        if any(t == 0 for t in e):
            raise NonGenericParams("eigenvalues must be nonzero")
        self.e = e
        self.a = tuple(_trace(t) for t in e)
        self.theta = theta_vi(self.a)

    @classmethod
    def from_traces(cls, a1, a2, a3, a4, e=None) -> "ParamsVI":
        obj = cls.__new__(cls)
        obj.a = tuple(as_q(t) for t in (a1, a2, a3, a4))
        obj.e = tuple(as_q(t) for t in e) if e is not None else None
        obj.theta = theta_vi(obj.a)
        return obj

    @property
    def generic(self) -> bool:
        return all(t != 2 and t != -2 for t in self.a)

    def __eq__(self, o):
        return isinstance(o, ParamsVI) and self.a == o.a

    def __hash__(self):
        return hash(("VI", self.a))

    def __repr__(self):
        if self.e is not None:
            return "ParamsVI(e=({}))".format(", ".join(qstr(t) for t in self.e))
        return "ParamsVI(a=({}))".format(", ".join(qstr(t) for t in self.a))

    def to_json(self) -> dict:
        out = {f"a{i + 1}": qstr(t) for i, t in enumerate(self.a)}
        if self.e is not None:
            out.update({f"e{i + 1}": qstr(t) for i, t in enumerate(self.e)})
        return out


class ParamsV:
    """Parameters of C_V: e0 and the traces a3, a4 (eigenvalues e3, e4 optional).

    Construction rejects non-generic values unless ``strict=False``.
    """

    __slots__ = ("e0", "a3", "a4", "e3", "e4", "theta")

    def __init__(self, e0, a3, a4, e3=None, e4=None, strict: bool = True):
        self.e0 = as_q(e0)
        self.a3 = as_q(a3)
        self.a4 = as_q(a4)
        self.e3 = as_q(e3) if e3 is not None else None
        self.e4 = as_q(e4) if e4 is not None else None
        if self.e0 == 0:
            raise NonGenericParams("e0 must be nonzero")
        self.theta = theta_v(self.e0, self.a3, self.a4)
        if strict and not self.generic:
            raise NonGenericParams(f"non-generic parameters {self!r}")

    @classmethod
    def from_eigen(cls, e0, e3, e4, strict: bool = True) -> "ParamsV":
        e3, e4 = as_q(e3), as_q(e4)
        if e3 == 0 or e4 == 0:
            raise NonGenericParams("eigenvalues must be nonzero")
        return cls(e0, _trace(e3), _trace(e4), e3, e4, strict=strict)

    @property
    def theta_minus(self):
        return theta_v(1 / self.e0, self.a3, self.a4)

    def minus(self) -> "ParamsV":
        """Same local data with e0 replaced by 1/e0 (the θ⁻ sheet)."""
        return ParamsV(1 / self.e0, self.a3, self.a4, self.e3, self.e4, strict=False)

    @property
    def generic(self) -> bool:
        e0, a3, a4 = self.e0, self.a3, self.a4
        if e0 in (1, -1) or a3 in (2, -2) or a4 in (2, -2):
            return False
        # e0·e3^±·e4^± = 1 for some signs iff {e0e3^±} meets {e4^±}
        res = _monic_quadratic_resultant(-e0 * a3, e0 * e0, -a4, Fraction(1))
        return res != 0

    def Q1(self, t):
        th1, th2, e0, th4 = self.theta
        return t ** 4 - th1 * t ** 3 + th4 * t ** 2 - e0 * th2 * t + e0 * e0

    def Q2(self, t):
        th1, th2, e0, th4 = self.theta
        return t ** 4 - th2 * t ** 3 + th4 * t ** 2 - e0 * th1 * t + e0 * e0

    def P(self, t):
        return t + self.e0

    def __eq__(self, o):
        return isinstance(o, ParamsV) and (self.e0, self.a3, self.a4) == (o.e0, o.a3, o.a4)

    def __hash__(self):
        return hash(("V", self.e0, self.a3, self.a4))

    def __repr__(self):
        return f"ParamsV(e0={qstr(self.e0)}, a3={qstr(self.a3)}, a4={qstr(self.a4)})"

    def to_json(self) -> dict:
        out = {"e0": qstr(self.e0), "a3": qstr(self.a3), "a4": qstr(self.a4)}
        if self.e3 is not None:
            out["e3"] = qstr(self.e3)
        if self.e4 is not None:
            out["e4"] = qstr(self.e4)
        return out


def params_theta(params) -> tuple:
    if isinstance(params, (ParamsV, ParamsVI)):
        return params.theta
    return tuple(params)


def family_of(params) -> str:
    return V if isinstance(params, ParamsV) else VI


# -- the cubic polynomials and their partials (generic over Fraction/Dual2) --

def f_vi(x, theta):
    x1, x2, x3 = x
    t1, t2, t3, t4 = theta
    return x1 * x2 * x3 + x1 * x1 + x2 * x2 + x3 * x3 - t1 * x1 - t2 * x2 - t3 * x3 + t4


def f_v(x, theta):
    x1, x2, x3 = x
    t1, t2, t3, t4 = theta
    return x1 * x2 * x3 + x1 * x1 + x2 * x2 - t1 * x1 - t2 * x2 - t3 * x3 + t4


def grad_vi(x, theta):
    x1, x2, x3 = x
    t1, t2, t3, _ = theta
    return (x2 * x3 + 2 * x1 - t1, x1 * x3 + 2 * x2 - t2, x1 * x2 + 2 * x3 - t3)


def grad_v(x, theta):
    x1, x2, x3 = x
    t1, t2, t3, _ = theta
    return (x2 * x3 + 2 * x1 - t1, x1 * x3 + 2 * x2 - t2, x1 * x2 - t3)


def eval_f(family: str, x, params):
    theta = params_theta(params)
    return f_v(x, theta) if family == V else f_vi(x, theta)


def gradient(family: str, x, params):
    theta = params_theta(params)
    return grad_v(x, theta) if family == V else grad_vi(x, theta)


def lift_x3(x1, x2, theta):
    """x3 on C_V over (x1, x2); works on rationals and jets."""
    t1, t2, e0, t4 = theta
    den = x1 * x2 - e0
    if is_zero(den):
        raise PolarLocus("x1·x2 = e0: the projection to (x1, x2) is not invertible")
    return -(x1 * x1 + x2 * x2 - t1 * x1 - t2 * x2 + t4) / den


@dataclass(frozen=True)
class SurfacePoint:
    family: str
    x: tuple
    params: object
    aux: dict | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(as_q(t) for t in self.x))
        if eval_f(self.family, self.x, self.params) != 0:
            raise NotOnSurface(f"F_{self.family}({', '.join(map(qstr, self.x))}) != 0 for {self.params!r}")

    def __iter__(self):
        return iter(self.x)

    def key(self) -> str:
        return ",".join(qstr(t) for t in self.x)

    def to_json(self) -> dict:
        return {"family": self.family, "x": [qstr(t) for t in self.x],
                "params": self.params.to_json()}


def lift_to_cv(x1, x2, params: ParamsV) -> SurfacePoint:
    x1, x2 = as_q(x1), as_q(x2)
    return SurfacePoint(V, (x1, x2, lift_x3(x1, x2, params.theta)), params)


def sample_surface(family: str, params, sampler: SeededSampler, retries: int = 200) -> SurfacePoint:
    """Random exact point of C_V(θ) or C_VI(θ).

    C_VI points are pushed forward from C_V through Φ_κ with κ = e1 and
    e0 = e1·e2; the auxiliary (e0, κ) is kept in ``point.aux``.
    """
    if family == V:
        for _ in range(retries):
            x1 = sample_rational(sampler, nonzero=True)
            x2 = sample_rational(sampler)
            try:
                return lift_to_cv(x1, x2, params)
            except PolarLocus:
                continue
        raise PolarLocus("sampler kept hitting x1·x2 = e0")
    if params.e is None:
        raise NonGenericParams("C_VI sampling needs rational eigenvalues e1..e4")
    from .dynamics.maps import phi_kappa

    e1, e2, e3, e4 = params.e
    kappa, e0 = e1, e1 * e2
    aux = ParamsV(e0, params.a[2], params.a[3], e3, e4, strict=False)
    fwd = phi_kappa(kappa)
    pv = sample_surface(V, aux, sampler, retries)
    img = fwd.raw(pv.x, aux)
    return SurfacePoint(VI, img, params, aux={"e0": e0, "kappa": kappa, "source": pv.x})


def random_params_v(sampler: SeededSampler, height: int = 7) -> ParamsV:
    """Generic ParamsV with rational eigenvalues (e0, e3, e4)."""
    while True:
        e0 = sample_rational(sampler, excluded=(1, -1), nonzero=True, height=height)
        e3 = sample_rational(sampler, excluded=(1, -1), nonzero=True, height=height)
        e4 = sample_rational(sampler, excluded=(1, -1), nonzero=True, height=height)
        p = ParamsV.from_eigen(e0, e3, e4, strict=False)
        if p.generic:
            return p


def random_params_vi(sampler: SeededSampler, height: int = 7) -> ParamsVI:
    while True:
        e = [sample_rational(sampler, excluded=(1, -1), nonzero=True, height=height) for _ in range(4)]
        p = ParamsVI(*e)
        if p.generic and e[0] * e[1] not in (1, -1):
            return p


# -- symplectic form --

def _surface_jets(family: str, x, params):
    """Jets for (x1, x2, x3) with x3 an implicit function of (x1, x2)."""
    x1, x2, x3 = x
    g = gradient(family, x, params)
    if g[2] == 0:
        raise ChartDegenerate("∂F/∂x3 vanishes: (x1, x2) is not a chart here")
    return (Dual2(x1, 1, 0), Dual2(x2, 0, 1), Dual2(x3, -g[0] / g[2], -g[1] / g[2]))


def symplectic_ratio(fmap, p: SurfacePoint) -> Fraction:
    """Pullback of ω = dx1∧dx2/F_x3 divided by ω, in the (x1, x2) chart."""
    jets = _surface_jets(p.family, p.x, p.params)
    try:
        out = fmap.raw(jets, p.params)
    except ZeroDivisionError as exc:
        raise ChartDegenerate(str(exc)) from exc
    X1, X2 = out[0], out[1]
    if not isinstance(X1, Dual2):
        X1 = Dual2(X1)
    if not isinstance(X2, Dual2):
        X2 = Dual2(X2)
    det = X1.d1 * X2.d2 - X1.d2 * X2.d1
    tgt_params = fmap.transport(p.params)
    img = tuple(value_of(t) for t in out)
    src_fx3 = gradient(p.family, p.x, p.params)[2]
    tgt_fx3 = gradient(fmap.target, img, tgt_params)[2]
    if tgt_fx3 == 0:
        raise ChartDegenerate("∂F/∂x3 vanishes at the image")
    return det * src_fx3 / tgt_fx3


# -- lines --

class Form:
    """Affine linear form c1·x1 + c2·x2 + c3·x3 + c0."""

    __slots__ = ("c",)

    def __init__(self, c1, c2, c3, c0):
        self.c = (as_q(c1), as_q(c2), as_q(c3), as_q(c0))

    def __call__(self, x):
        c1, c2, c3, c0 = self.c
        return c1 * x[0] + c2 * x[1] + c3 * x[2] + c0

    def scaled(self, s) -> "Form":
        return Form(*(s * t for t in self.c))

    def normalized(self) -> tuple:
        lead = next(t for t in self.c if t != 0)
        return tuple(t / lead for t in self.c)

    def __repr__(self):
        return "Form({})".format(", ".join(qstr(t) for t in self.c))


@dataclass(frozen=True)
class Line:
    label: str
    family: str
    k: int          # plane x_k = c, k in {1,2,3}
    c: Fraction
    form: Form
    point: tuple
    direction: tuple

    def at(self, t) -> tuple:
        return tuple(p + t * d for p, d in zip(self.point, self.direction))

    def key(self) -> tuple:
        return (self.k, self.c, self.form.normalized())

    def to_json(self) -> dict:
        return {"label": self.label, "plane": {"k": self.k, "c": qstr(self.c)},
                "point": [qstr(t) for t in self.point], "dir": [qstr(t) for t in self.direction]}


@dataclass(frozen=True)
class ConicRecord:
    """A plane section that splits only over an extension of Q."""
    label: str
    family: str
    k: int
    c: Fraction

    def to_json(self) -> dict:
        return {"label": self.label, "plane": {"k": self.k, "c": qstr(self.c)}, "conic": "irrational"}


def _others(k: int) -> tuple[int, int]:
    return tuple(i for i in (1, 2, 3) if i != k)


def _make_line(label, family, params, k, c, form: Form) -> Line:
    i, j = _others(k)
    a, b, g = form.c[i - 1], form.c[j - 1], form.c[3]
    if a == 0 and b == 0:
        raise DegenerateConfiguration(f"{label}: form has no slope in its plane")
    pt = [Fraction(0)] * 3
    dr = [Fraction(0)] * 3
    pt[k - 1] = c
    if b != 0:
        pt[j - 1] = -g / b
    else:
        pt[i - 1] = -g / a
    dr[i - 1], dr[j - 1] = b, -a
    line = Line(label, family, k, c, form, tuple(pt), tuple(dr))
    for t in (0, 1, 2):
        q = line.at(t)
        if eval_f(family, q, params) != 0 or form(q) != 0:
            raise DegenerateConfiguration(f"{label} is not contained in the surface")
    return line


def plane_section(family: str, params, k: int, c) -> tuple:
    """Coefficients (A, B, C, D, E, F) of F restricted to x_k = c.

    The quadratic is A·X² + B·XY + C·Y² + D·X + E·Y + F in (X, Y) = the other
    two coordinates in increasing index order.
    """
    c = as_q(c)
    t1, t2, t3, t4 = params_theta(params)
    th = (t1, t2, t3)
    sq = (1, 1, 1) if family == VI else (1, 1, 0)
    i, j = _others(k)
    A = Fraction(sq[i - 1])
    C = Fraction(sq[j - 1])
    B = c
    D = -th[i - 1]
    E = -th[j - 1]
    F = sq[k - 1] * c * c - th[k - 1] * c + t4
    return A, B, C, D, E, F


def factor_conic(k: int, c, params, family: str | None = None) -> tuple[Form, Form]:
    """Split the plane section F|_{x_k = c} into two rational linear forms."""
    family = family or family_of(params)
    c = as_q(c)
    A, B, C, D, E, F = plane_section(family, params, k, c)
    det = (2 * A) * (2 * C * 2 * F - E * E) - B * (B * 2 * F - E * D) + D * (B * E - 2 * C * D)
    if det != 0:
        raise Irreducible(f"plane section x{k} = {qstr(c)} is a smooth conic")
    i, j = _others(k)

    def form(cx, cy, c0):
        co = [Fraction(0)] * 3
        co[i - 1], co[j - 1] = cx, cy
        return Form(co[0], co[1], co[2], c0)

    if A == 0 and C == 0:
        if B == 0:
            raise Irreducible("plane section is not quadratic")
        return form(B, 0, E), form(0, 1, D / B)
    swapped = False
    if A == 0:
        A, C, D, E = C, A, E, D
        swapped = True
    p = B * B - 4 * A * C
    q = 2 * B * D - 4 * A * E
    r = D * D - 4 * A * F
    if p != 0:
        s = rational_sqrt(p)
        if s is None:
            raise IrrationalSplitting(f"x{k} = {qstr(c)}: factors need √{qstr(p)}", splits=True)
        sy, s0 = s, s * q / (2 * p)
    else:
        s = rational_sqrt(r)
        if s is None:
            raise IrrationalSplitting(f"x{k} = {qstr(c)}: factors need √{qstr(r)}", splits=True)
        sy, s0 = Fraction(0), s
    # forms in (X, Y): 2A X + (B ± sy) Y + (D ± s0), product 4A·q
    lx1, ly1, l01 = 2 * A, B + sy, D + s0
    lx2, ly2, l02 = 2 * A, B - sy, D - s0
    f1 = (lx1 / 2, ly1 / 2, l01 / 2)
    f2 = (lx2 / (2 * A), ly2 / (2 * A), l02 / (2 * A))
    if swapped:
        f1 = (f1[1], f1[0], f1[2])
        f2 = (f2[1], f2[0], f2[2])
    return form(*f1), form(*f2)


def _vi_forms(params: ParamsVI, k: int, ei, ej):
    """l_{ei,ej} = ei·xi + ej·xj − a_k·ei·ej − a4 in the plane x_k = c_{ei,ej}, (i, j) = _PAIR[k]."""
    i, j = _PAIR[k]
    co = [Fraction(0)] * 3
    co[i - 1], co[j - 1] = ei, ej
    return Form(co[0], co[1], co[2], -params.a[k - 1] * ei * ej - params.a[3])


_PAIR = {3: (1, 2), 1: (2, 3), 2: (3, 1)}


def _sup(n: int, s: int) -> str:
    return f"e{n}" if s > 0 else f"e{n}^-1"


def lines_cvi(params: ParamsVI) -> list[Line]:
    """The 24 lines of C_VI(θ) for generic rational e1..e4."""
    if params.e is None:
        raise NonGenericParams("lines need rational eigenvalues")
    e = params.e
    lines: list[Line] = []
    for k in (3, 1, 2):
        i, j = _PAIR[k]
        for sj in (1, -1):
            # plane c_{ei, ej^sj}: lines L_{ei, ej^sj} and L_{ei^-1, ej^-sj}
            c = c_value(e[i - 1], e[j - 1] ** sj)
            for s in (1, -1):
                ei, ej = e[i - 1] ** s, e[j - 1] ** (s * sj)
                label = f"L_{{{_sup(i, s)},{_sup(j, s * sj)}}}"
                lines.append(_make_line(label, VI, params, k, c, _vi_forms(params, k, ei, ej)))
        for s4 in (1, -1):
            c = c_value(e[k - 1], e[3] ** s4)
            f1, f2 = factor_conic(k, c, params, VI)
            ratio = e[3] ** s4 / e[k - 1]
            ii, jj = _others(k)
            for f in (f1, f2):
                num, den = f.c[jj - 1], f.c[ii - 1]
                plus = den != 0 and num / den == ratio
                label = f"L_{{{_sup(k, 1 if plus else -1)},{_sup(4, s4 if plus else -s4)}}}"
                lines.append(_make_line(label, VI, params, k, c, f))
    _check_distinct(lines)
    return lines


def _check_distinct(lines):
    keys = [ln.key() for ln in lines]
    if len(set(keys)) != len(keys):
        raise DegenerateConfiguration("two lines coincide: parameters are not generic")


def lines_cv(params: ParamsV) -> list:
    """The 18 lines of C_V(θ): Δ, D^l, D^r and three plane pairs over x3.

    Plane pairs that only split over an extension of Q are returned as
    :class:`ConicRecord` entries.
    """
    if params.e3 is None or params.e4 is None:
        raise NonGenericParams("lines need rational e3, e4")
    e0, e3, e4 = params.e0, params.e3, params.e4
    t1, t2, _, _ = params.theta
    out: list = []
    roots = (("e3", e3), ("e3^-1", 1 / e3), ("e4", e0 * e4), ("e4^-1", e0 / e4))
    for name, r in roots:
        out.append(_make_line(f"Delta_{name}", V, params, 1, r, Form(0, 1, 0, -e0 / r)))
    for name, r in roots:
        out.append(_make_line(f"Dl_{name}", V, params, 1, r, Form(0, 1, r, e0 / r - t2)))
    for name, r in roots:
        out.append(_make_line(f"Dr_{name}", V, params, 2, e0 / r, Form(1, 0, e0 / r, r - t1)))
    planes = (("e3,e4", c_value(e3, e4)), ("e3,e4^-1", c_value(e3, 1 / e4)), ("e0,e0^-1", e0 + 1 / e0))
    for name, c in planes:
        try:
            if name == "e0,e0^-1":
                f0 = rational_sqrt(e0)
                if f0 is None:
                    raise IrrationalSplitting("e0 is not a rational square", splits=True)
                fa = Form(f0, 1 / f0, 0, -f0 * params.a3)
                fb = Form(1 / f0, f0, 0, -f0 * params.a4)
            else:
                fa, fb = factor_conic(3, c, params, V)
        except IrrationalSplitting:
            out.append(ConicRecord(f"P_{{{name}}}", V, 3, c))
            continue
        out.append(_make_line(f"L_{{{name}}}+", V, params, 3, c, fa))
        out.append(_make_line(f"L_{{{name}}}-", V, params, 3, c, fb))
    _check_distinct([ln for ln in out if isinstance(ln, Line)])
    return out


def _solve2(a1, b1, c1, a2, b2, c2):
    """Solve a1 X + b1 Y + c1 = 0, a2 X + b2 Y + c2 = 0."""
    det = a1 * b2 - a2 * b1
    if det == 0:
        raise SingularSystem("the two forms are proportional")
    return ((b1 * c2 - b2 * c1) / det, (a2 * c1 - a1 * c2) / det)


@dataclass(frozen=True)
class KanekoPoint:
    label: str
    k: int
    c: Fraction
    point: SurfacePoint


def _plane_singular_point(family, params, k, c):
    """The singular point of a degenerate plane section (both in-plane partials vanish)."""
    A, B, C, D, E, _ = plane_section(family, params, k, c)
    X, Y = _solve2(2 * A, B, D, B, 2 * C, E)
    i, j = _others(k)
    x = [Fraction(0)] * 3
    x[k - 1], x[i - 1], x[j - 1] = as_q(c), X, Y
    return tuple(x)


def _intersect(k, c, f1: Form, f2: Form):
    i, j = _others(k)
    X, Y = _solve2(f1.c[i - 1], f1.c[j - 1], f1.c[3], f2.c[i - 1], f2.c[j - 1], f2.c[3])
    x = [Fraction(0)] * 3
    x[k - 1], x[i - 1], x[j - 1] = as_q(c), X, Y
    return tuple(x)


def kaneko_points(params, via: str = "lines") -> list[KanekoPoint]:
    """Kaneko points: the crossing point of each paired couple of lines.

    ``via="lines"`` intersects the two rational line forms; ``via="gradient"``
    solves the in-plane gradient system instead, which stays rational even
    when the lines themselves are not.
    """
    family = family_of(params)
    out: list[KanekoPoint] = []
    if family == VI:
        if via == "lines":
            lines = lines_cvi(params)
            by_plane: dict = {}
            for ln in lines:
                by_plane.setdefault((ln.k, ln.c), []).append(ln)
            for (k, c), pair in by_plane.items():
                if len(pair) != 2:
                    raise DegenerateConfiguration("planes of paired lines coincide")
                x = _intersect(k, c, pair[0].form, pair[1].form)
                first = min(pair, key=lambda ln: (ln.label.count("^-1"), ln.label))
                label = "p_" + first.label[2:]
                out.append(KanekoPoint(label, k, c, SurfacePoint(VI, x, params)))
            return out
        if params.e is None:
            raise NonGenericParams("Kaneko planes need rational eigenvalues")
        e = params.e
        for k in (3, 1, 2):
            i, j = _PAIR[k]
            for name, c in ((f"e{i},e{j}", c_value(e[i - 1], e[j - 1])),
                            (f"e{i},e{j}^-1", c_value(e[i - 1], 1 / e[j - 1])),
                            (f"e{k},e4", c_value(e[k - 1], e[3])),
                            (f"e{k},e4^-1", c_value(e[k - 1], 1 / e[3]))):
                x = _plane_singular_point(VI, params, k, c)
                out.append(KanekoPoint(f"p_{{{name}}}", k, c, SurfacePoint(VI, x, params)))
        return out
    planes = _cv_kaneko_planes(params)
    for name, c in planes:
        x = None
        if via == "lines" and params.e3 is not None:
            try:
                if name == "e0,e0^-1":
                    f0 = rational_sqrt(params.e0)
                    if f0 is None:
                        raise IrrationalSplitting("e0 not a square", splits=True)
                    fa = Form(f0, 1 / f0, 0, -f0 * params.a3)
                    fb = Form(1 / f0, f0, 0, -f0 * params.a4)
                else:
                    fa, fb = factor_conic(3, c, params, V)
                x = _intersect(3, c, fa, fb)
            except IrrationalSplitting:
                x = None
        if x is None:
            x = _plane_singular_point(V, params, 3, c)
        out.append(KanekoPoint(f"p_{{{name}}}", 3, c, SurfacePoint(V, x, params)))
    return out


def _cv_kaneko_planes(params: ParamsV):
    """Plane values x3 = c_{e3,e4}, c_{e3,e4^-1}, e0 + 1/e0.

    With only a3, a4 known the first two are the roots of
    t² − a3a4·t + a3² + a4² − 4, which must then be rational.
    """
    e0 = params.e0
    if params.e3 is not None and params.e4 is not None:
        c1, c2 = c_value(params.e3, params.e4), c_value(params.e3, 1 / params.e4)
    else:
        from .numeric import quadratic_roots
        a3, a4 = params.a3, params.a4
        roots = quadratic_roots(-a3 * a4, a3 * a3 + a4 * a4 - 4)
        if roots is None:
            raise IrrationalSplitting("Kaneko planes are irrational for these traces", splits=True)
        c1, c2 = roots
    return (("e3,e4", c1), ("e3,e4^-1", c2), ("e0,e0^-1", e0 + 1 / e0))
