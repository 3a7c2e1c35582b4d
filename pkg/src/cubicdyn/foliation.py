"""The compactified Painlevé V field: chart formulas, Bäcklund gluing,
singular points with their linear parts, and the formal normal form.

Charts of the weighted projective compactification::

    U1: (1 : u1 : u2 : x)    U3: (v1 : v2 : 1 : y)    U4: (w1 : w2 : z : 1)
    w1 = v1/y = 1/x,  w2 = v2 = u1,  z = 1/y = u2/x

The tilde charts are the second copy glued by π. Exact rationals throughout,
except the normal-form functions at the end, which are complex floating.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct

from .errors import ChartDegenerate, NonGenericAlpha, NotSingular, UnknownChart
from .numeric import Dual2, as_q, qstr, value_of

CHARTS = ("U1", "U3", "U4", "tU1", "tU3", "tU4")


@dataclass(frozen=True)
class AlphaParams:
    """(α1, α2, α3); α0 = 1 − α1 − α2 − α3 closes the Bäcklund parameter cycle."""

    a1: Fraction
    a2: Fraction
    a3: Fraction

    def __post_init__(self):
        for f in ("a1", "a2", "a3"):
            object.__setattr__(self, f, as_q(getattr(self, f)))

    @property
    def a0(self) -> Fraction:
        return 1 - self.a1 - self.a2 - self.a3

    @property
    def normal_form_a0(self) -> Fraction:
        """2α1 + α2 − 1, the exponent constant of the formal normal form."""
        return 2 * self.a1 + self.a2 - 1

    def tilde(self) -> "AlphaParams":
        """(α̃0, α̃1, α̃2, α̃3) = (α1, α2, α3, α0)."""
        return AlphaParams(self.a2, self.a3, self.a0)

    def untilde(self) -> "AlphaParams":
        return AlphaParams(1 - self.a1 - self.a2 - self.a3, self.a1, self.a2)

    def all4(self) -> tuple:
        return (self.a0, self.a1, self.a2, self.a3)

    def to_json(self) -> dict:
        return {"a1": qstr(self.a1), "a2": qstr(self.a2), "a3": qstr(self.a3)}


# -- fields --

def _u1_field(p, al: AlphaParams):
    u1, u2, x = p
    s = al.a1 + al.a3
    return (-2 * u1 + 2 * u1 * u1 - u1 * u2 + u1 * u1 * u2 + al.a1 * x - s * u1 * x,
            -u2 + 2 * u1 * u2 - u2 * u2 + u2 * x + 2 * u1 * u2 * u2 - s * u2 * x + al.a2 * u2 * u2 * x,
            x * (-1 + 2 * u1 - u2 + 2 * u1 * u2 - s * x + al.a2 * u2 * x))


def _u3_field(p, al: AlphaParams):
    v1, v2, y = p
    s = al.a1 + al.a3
    return (v1 * (1 + v1 - 2 * v2 - 2 * v1 * v2 + (s - 1) * y) - al.a2 * y,
            v2 * (-1 + v2 - 2 * v1 + 2 * v1 * v2 - s * y) + al.a1 * y,
            -y * y)


def _u4_field(p, al: AlphaParams):
    """Right-hand sides (zẇ1, zẇ2, ż) as displayed."""
    w1, w2, z = p
    s = al.a1 + al.a3
    return (-2 * w1 * w1 * w2 + w1 * w1 + w1 * z - 2 * w1 * w2 * z + s * w1 - al.a2 * z,
            2 * w1 * w2 * w2 - 2 * w1 * w2 - w2 * z + w2 * w2 * z - s * w2 + al.a1,
            z)


def _tu3_field(p, al: AlphaParams):
    # π acts on U3 as the polynomial involution-like swap (v2 − 1, −v1, y)
    t1, t2, y = p
    f1, f2, f3 = _u3_field((-t2, t1 + 1, y), al)
    return (f2, -f1, f3)


def _tu4_field(p, al: AlphaParams):
    """First two components: z̃ times the π-image of (N1/z, N2/z, z), the w-field
    read literally. The third keeps the displayed shape ż̃ = z̃."""
    W1, W2, Z = p
    s = al.a1 + al.a3
    return (-2 * W1 * W1 * W2 + W1 * W1 - 2 * W1 * W2 * Z + 2 * W1 * Z - s * W1 - al.a3 * Z,
            2 * W1 * W2 * W2 - 2 * W1 * W2 + W2 * W2 * Z - 2 * W2 * Z + s * W2 + al.a2,
            Z)


_FIELDS = {
    "U1": _u1_field,
    "U3": _u3_field,
    "U4": _u4_field,
    "tU1": lambda p, al: _u1_field(p, al.tilde()),
    "tU3": _tu3_field,
    "tU4": _tu4_field,
}


def vector_field(chart: str, point, alpha: AlphaParams) -> tuple:
    try:
        f = _FIELDS[chart]
    except KeyError:
        raise UnknownChart(chart) from None
    return tuple(f(tuple(point), alpha))


# -- chart transitions and the Bäcklund map --

def _inv(t, what):
    if value_of(t) == 0:
        raise ChartDegenerate(f"{what} = 0")
    return 1 / t


def u_to_w(p):
    u1, u2, x = p
    ix = _inv(x, "x")
    return (ix, u1, u2 * ix)


def w_to_u(p):
    w1, w2, z = p
    iw = _inv(w1, "w1")
    return (w2, z * iw, iw)


def u_to_v(p):
    u1, u2, x = p
    iu = _inv(u2, "u2")
    return (iu, u1, x * iu)


def v_to_u(p):
    v1, v2, y = p
    iv = _inv(v1, "v1")
    return (v2, iv, y * iv)


def _pi_w(p):
    w1, w2, z = p
    return (z * (w2 - 1), -w1 * _inv(z, "z"), z)


def _pi_w_inv(p):
    W1, W2, Z = p
    return (-W2 * Z, W1 * _inv(Z, "z") + 1, Z)


def _pi_v(p):
    v1, v2, y = p
    return (v2 - 1, -v1, y)


def _pi_v_inv(p):
    t1, t2, y = p
    return (-t2, t1 + 1, y)


def _pi_u(p):
    u1, u2, x = p
    a = _inv(u2, "u2")
    b = _inv(u1 - 1, "u1 − 1")
    return (-a, b, b * a * x)


def _pi_u_inv(p):
    t1, t2, tx = p
    u2 = -_inv(t1, "ũ1")
    u1 = 1 + _inv(t2, "ũ2")
    return (u1, u2, tx * (u1 - 1) * u2)


_PI = {"U4": ("tU4", _pi_w), "U3": ("tU3", _pi_v), "U1": ("tU1", _pi_u)}
_PI_INV = {"tU4": ("U4", _pi_w_inv), "tU3": ("U3", _pi_v_inv), "tU1": ("U1", _pi_u_inv)}


@dataclass(frozen=True)
class ChartPoint:
    chart: str
    coords: tuple

    def __post_init__(self):
        if self.chart not in CHARTS:
            raise UnknownChart(self.chart)
        object.__setattr__(self, "coords", tuple(as_q(c) for c in self.coords))

    def to_json(self) -> dict:
        return {"chart": self.chart, "coords": [qstr(c) for c in self.coords]}


def backlund_pi(pt: ChartPoint, alpha: AlphaParams | None = None):
    """π from a chart of the first copy to its tilde chart; returns (point, α̃)."""
    if pt.chart not in _PI:
        raise UnknownChart(f"π is defined on U1, U3, U4, not {pt.chart}")
    target, f = _PI[pt.chart]
    out = ChartPoint(target, f(pt.coords))
    return out, (alpha.tilde() if alpha is not None else None)


def backlund_pi_inv(pt: ChartPoint, alpha: AlphaParams | None = None):
    if pt.chart not in _PI_INV:
        raise UnknownChart(f"π⁻¹ is defined on tilde charts, not {pt.chart}")
    target, f = _PI_INV[pt.chart]
    return ChartPoint(target, f(pt.coords)), (alpha.untilde() if alpha is not None else None)


def pushforward(fmap, field_fn, point, alpha: AlphaParams) -> tuple:
    """Image of the field under ``fmap`` at ``fmap(point)``, by forward jets."""
    base = tuple(as_q(c) for c in point)
    vec = field_fn(base, alpha)
    jet = tuple(Dual2(b, v, 0) for b, v in zip(base, vec))
    return tuple(t.d1 if isinstance(t, Dual2) else Fraction(0) for t in fmap(jet))


# -- linear parts --

def jacobian3(chart: str, point, alpha: AlphaParams) -> list:
    """3×3 Jacobian of the chart field, one jet pass per column."""
    f = _FIELDS.get(chart)
    if f is None:
        raise UnknownChart(chart)
    base = tuple(as_q(c) for c in point)
    cols = []
    for j in range(3):
        jet = tuple(Dual2(b, 1 if i == j else 0, 0) for i, b in enumerate(base))
        out = f(jet, alpha)
        cols.append([t.d1 if isinstance(t, Dual2) else Fraction(0) for t in out])
    return [[cols[j][i] for j in range(3)] for i in range(3)]


def char_poly(J) -> list:
    """[c0, c1, c2, 1] with det(λI − J) = λ³ + c2λ² + c1λ + c0."""
    tr = J[0][0] + J[1][1] + J[2][2]
    minors = (J[0][0] * J[1][1] - J[0][1] * J[1][0]
              + J[0][0] * J[2][2] - J[0][2] * J[2][0]
              + J[1][1] * J[2][2] - J[1][2] * J[2][1])
    det = (J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1])
           - J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0])
           + J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]))
    return [-det, minors, -tr, Fraction(1)]


def linearization(chart: str, point, alpha: AlphaParams) -> tuple:
    """(Jacobian, characteristic polynomial) at a zero of the field."""
    if any(c != 0 for c in vector_field(chart, point, alpha)):
        raise NotSingular(f"the {chart} field does not vanish at {tuple(map(qstr, point))}")
    J = jacobian3(chart, point, alpha)
    return J, char_poly(J)


# -- census --

@dataclass
class SingularPoint:
    label: str
    chart: str
    coords: tuple
    char_poly: list
    alias_of: str | None = None
    kind: str = field(default="")

    def to_json(self) -> dict:
        out = {"label": self.label, "chart": self.chart,
               "coords": [qstr(c) for c in self.coords],
               "char_poly": [qstr(c) for c in self.char_poly]}
        if self.alias_of:
            out["same_as"] = self.alias_of
        return out


def factor_zeros(factors1, factors2) -> list:
    """Common zeros in the plane of two products of linear factors.

    Each factor is (index, root) meaning coordinate[index] = root.
    """
    out = []
    for f, g in iproduct(factors1, factors2):
        if f[0] == g[0]:
            continue  # both fix the same coordinate: a point only if roots agree, and then not isolated
        pt = [None, None]
        pt[f[0]], pt[g[0]] = f[1], g[1]
        t = (Fraction(pt[0]), Fraction(pt[1]))
        if t not in out:
            out.append(t)
    return out


# factored restrictions of the U1 and U3 fields to the plane at infinity
U1_FACTORS = ([(0, 0), (0, 1), (1, -2)], [(1, 0), (0, Fraction(1, 2)), (1, -1)])
U3_FACTORS = ([(0, 0), (0, -1), (1, Fraction(1, 2))], [(1, 0), (1, 1), (0, Fraction(-1, 2))])

_U1_LABELS = {(0, 0): "p1", (1, 0): "p2", (0, -1): "s1", (Fraction(1, 2), -2): "s2", (1, -1): "s3"}
_U3_LABELS = {(-1, 0): "s1", (Fraction(-1, 2), Fraction(1, 2)): "s2", (-1, 1): "s3", (0, 0): "s4", (0, 1): "s5"}
_TU1_LABELS = {(0, 0): "p3", (1, 0): "p4", (1, -1): "s1", (Fraction(1, 2), -2): "s2", (0, -1): "s4"}


def check_alpha(alpha: AlphaParams):
    t = alpha.tilde()
    bad = []
    if alpha.a1 + alpha.a3 == 0:
        bad.append("α1 + α3 = 0")
    if alpha.a1 - alpha.a3 == 0:
        bad.append("α1 − α3 = 0")
    if t.a1 - t.a3 + 1 == 0:
        bad.append("α̃1 − α̃3 + 1 = 0")
    if t.a0 + t.a2 == 0:
        bad.append("α̃0 + α̃2 = 0")
    if bad:
        raise NonGenericAlpha(", ".join(bad))


def _record(label, chart, coords, alpha, alias_of=None, kind=""):
    _, cp = linearization(chart, coords, alpha)
    return SingularPoint(label, chart, tuple(as_q(c) for c in coords), cp, alias_of, kind)


def singular_census(alpha: AlphaParams, with_aliases: bool = True) -> list:
    """Regular (r), polar (p) and saddle-node (s) singular points, each verified as an exact zero.

    Points seen in more than one chart appear once under their primary chart;
    the other sightings carry ``alias_of`` and are dropped when
    ``with_aliases`` is false.
    """
    check_alpha(alpha)
    a1, a3 = alpha.a1, alpha.a3
    t = alpha.tilde()
    out = [
        _record("r1", "U4", (0, a1 / (a1 + a3), 0), alpha, kind="regular"),
        _record("r2", "U4", (a1 - a3, a1 / (a1 - a3), 0), alpha, kind="regular"),
        _record("r3", "tU4", (t.a1 - t.a3 + 1, t.a1 / (t.a1 - t.a3 + 1), 0), alpha, kind="regular"),
    ]
    aliases = [_record("r4", "tU4", (0, -t.a1 / (t.a0 + t.a2), 0), alpha, "r1", "regular")]
    for (c1, c2) in factor_zeros(*U1_FACTORS):
        lab = _U1_LABELS[(c1, c2)]
        out.append(_record(lab, "U1", (c1, c2, 0), alpha, kind="polar" if lab[0] == "p" else "saddle-node"))
    for (c1, c2) in factor_zeros(*U1_FACTORS):
        lab = _TU1_LABELS[(c1, c2)]
        rec = _record(lab, "tU1", (c1, c2, 0), alpha, kind="polar" if lab[0] == "p" else "saddle-node")
        if lab[0] == "p":
            out.append(rec)
        else:
            rec.alias_of = lab
            aliases.append(rec)
    for (c1, c2) in factor_zeros(*U3_FACTORS):
        lab = _U3_LABELS[(c1, c2)]
        rec = _record(lab, "U3", (c1, c2, 0), alpha, kind="saddle-node")
        if lab in ("s4", "s5"):
            out.append(rec)
        else:
            rec.alias_of = lab
            aliases.append(rec)
    order = {lab: i for i, lab in enumerate(
        ["r1", "r2", "r3", "p1", "p2", "p3", "p4", "s1", "s2", "s3", "s4", "s5"])}
    out.sort(key=lambda r: order[r.label])
    return out + aliases if with_aliases else out


# -- formal normal form (complex floating) --

@dataclass(frozen=True)
class NormalFormState:
    c1: complex
    c2: complex

    @property
    def h(self) -> complex:
        return self.c1 * self.c2


def normal_form_flow(x: complex, c1: complex, c2: complex, alpha0) -> tuple:
    """(u1, u2) = (c1 e^{−1/x} x^{−α0+4c1c2}, c2 e^{1/x} x^{α0−4c1c2}), principal branch."""
    x = complex(x)
    if x == 0:
        raise ZeroDivisionError("x = 0")
    p = -complex(alpha0) + 4 * c1 * c2
    logx = cmath.log(x)
    return (c1 * cmath.exp(-1 / x + p * logx), c2 * cmath.exp(1 / x - p * logx))


def torus_action(state: NormalFormState, coeffs) -> NormalFormState:
    """t_α with α(h) = Σ coeffs[k]·h^k."""
    h = state.h
    a = sum(complex(c) * h ** k for k, c in enumerate(coeffs))
    return NormalFormState(state.c1 * cmath.exp(a), state.c2 * cmath.exp(-a))


def formal_monodromy_N(state: NormalFormState, alpha0) -> NormalFormState:
    """N̂ = t_α with α(h) = 2iπ(−α0 + 4h)."""
    two_pi_i = 2j * cmath.pi
    return torus_action(state, [two_pi_i * -complex(alpha0), two_pi_i * 4])
