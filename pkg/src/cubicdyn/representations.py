"""SL2 tuples behind the cubic surfaces: trace maps, the confluence at matrix level,
braid conjugations and the moduli invariants of the linear system."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (IrrationalEigenvector, NonGeneric, NonGenericPoint, PolarLocus,
                     ReduciblePair, ZeroCorner)
from .numeric import SeededSampler, as_q, qstr, sample_rational
from .surfaces import V, VI, ParamsV, SurfacePoint, theta_v


@dataclass(frozen=True)
class Mat2:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for f in "abcd":
            object.__setattr__(self, f, as_q(getattr(self, f)))

    @classmethod
    def of(cls, rows) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def diag(cls, e) -> "Mat2":
        e = as_q(e)
        return cls(e, 0, 0, 1 / e)

    @classmethod
    def lower(cls, l) -> "Mat2":
        return cls(1, 0, l, 1)

    @classmethod
    def upper(cls, u) -> "Mat2":
        return cls(1, u, 0, 1)

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    @property
    def tr(self) -> Fraction:
        return self.a + self.d

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inv(self) -> "Mat2":
        det = self.det
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def conj(self, X: "Mat2") -> "Mat2":
        """X⁻¹·self·X."""
        return X.inv() @ self @ X

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def to_json(self) -> list:
        return [qstr(t) for t in (self.a, self.b, self.c, self.d)]


I2 = Mat2.identity()


def product(*ms: Mat2) -> Mat2:
    out = I2
    for m in ms:
        out = out @ m
    return out


def _check_sl2(*ms):
    for m in ms:
        if m.det != 1:
            raise ValueError(f"det {qstr(m.det)} != 1")


@dataclass(frozen=True)
class RepVI:
    M1: Mat2
    M2: Mat2
    M3: Mat2
    M4: Mat2

    def __post_init__(self):
        _check_sl2(self.M1, self.M2, self.M3, self.M4)
        if product(self.M1, self.M2, self.M3, self.M4) != I2:
            raise ValueError("M1·M2·M3·M4 != I")

    @classmethod
    def closing(cls, M1, M2, M3) -> "RepVI":
        return cls(M1, M2, M3, product(M1, M2, M3).inv())

    @property
    def mats(self) -> tuple:
        return (self.M1, self.M2, self.M3, self.M4)

    def conj(self, X: Mat2) -> "RepVI":
        return RepVI(*(m.conj(X) for m in self.mats))

    def to_json(self) -> dict:
        return {f"M{i + 1}": m.to_json() for i, m in enumerate(self.mats)}


@dataclass(frozen=True)
class RepV:
    """U1·M0·U2·M3·M4 = I with U1 lower and U2 upper unipotent, M0 = diag(e0, 1/e0)."""

    U1: Mat2
    M0: Mat2
    U2: Mat2
    M3: Mat2
    M4: Mat2
    kappa: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "kappa", as_q(self.kappa))
        if self.kappa == 0:
            raise ValueError("kappa must be nonzero")
        U1, M0, U2 = self.U1, self.M0, self.U2
        if not (U1.a == U1.d == 1 and U1.b == 0):
            raise ValueError("U1 must be lower unipotent")
        if not (U2.a == U2.d == 1 and U2.c == 0):
            raise ValueError("U2 must be upper unipotent")
        if M0.b != 0 or M0.c != 0 or M0.a * M0.d != 1:
            raise ValueError("M0 must be diag(e0, 1/e0)")
        _check_sl2(self.M3, self.M4)
        if product(U1, M0, U2, self.M3, self.M4) != I2:
            raise ValueError("U1·M0·U2·M3·M4 != I")

    @classmethod
    def build(cls, e0, u1, u2, M3: Mat2, kappa=1) -> "RepV":
        U1, M0, U2 = Mat2.lower(u1), Mat2.diag(e0), Mat2.upper(u2)
        return cls(U1, M0, U2, M3, product(U1, M0, U2, M3).inv(), kappa)

    @property
    def e0(self) -> Fraction:
        return self.M0.a

    @property
    def u1(self) -> Fraction:
        return self.U1.c

    @property
    def u2(self) -> Fraction:
        return self.U2.b

    @property
    def mats(self) -> tuple:
        return (self.U1, self.M0, self.U2, self.M3, self.M4)

    def conj(self, X: Mat2) -> "RepV":
        return RepV(*(m.conj(X) for m in self.mats), self.kappa)

    def to_json(self) -> dict:
        out = {k: m.to_json() for k, m in zip(("U1", "M0", "U2", "M3", "M4"), self.mats)}
        out["kappa"] = qstr(self.kappa)
        return out


# -- LDU and eigen-data --

def ldu(M: Mat2) -> tuple:
    """(l, e, u) with M = lower(l)·diag(e)·upper(u)."""
    if M.det != 1:
        raise ValueError("ldu expects an SL2 matrix")
    if M.a == 0:
        raise ZeroCorner("top-left entry vanishes: no LDU decomposition")
    return (M.c / M.a, M.a, M.b / M.a)


def ldu_mats(M: Mat2) -> tuple:
    l, e, u = ldu(M)
    return Mat2.lower(l), Mat2.diag(e), Mat2.upper(u)


def eigenvector(M: Mat2, lam) -> tuple:
    """A nonzero rational eigenvector of M for the eigenvalue ``lam``."""
    lam = as_q(lam)
    if lam * lam - M.tr * lam + M.det != 0:
        raise IrrationalEigenvector(f"{qstr(lam)} is not an eigenvalue")
    if M.b != 0:
        return (M.b, lam - M.a)
    if lam != M.d or M.c != 0:
        return (lam - M.d, M.c)
    return (Fraction(0), Fraction(1)) if M.a != lam else (Fraction(1), Fraction(0))


def rational_eigenvalues(M: Mat2) -> tuple:
    from .numeric import quadratic_roots
    roots = quadratic_roots(-M.tr, M.det)
    if roots is None:
        raise IrrationalEigenvector("eigenvalues are not rational")
    return roots


# -- trace maps --

def trace_vi(rep: RepVI) -> tuple:
    """(a1, a2, a3, a4, x1, x2, x3)."""
    M1, M2, M3, M4 = rep.mats
    return (M1.tr, M2.tr, M3.tr, M4.tr, (M2 @ M3).tr, (M3 @ M1).tr, (M1 @ M2).tr)


def trace_v_plus(rep: RepV) -> tuple:
    """(e0, a3, a4, x1, x2, x3) on C_V(θ⁺)."""
    x3 = product(rep.U1, rep.M0, rep.U2).tr
    return (rep.e0, rep.M3.tr, rep.M4.tr, rep.M3.d, rep.M4.d, x3)


def trace_v_minus(rep: RepV) -> tuple:
    """(1/e0, a3, a4, x1, x2, x3) on C_V(θ⁻): the θ⁺ coordinates moved by the half braid."""
    from .dynamics.maps import _b34

    e0, a3, a4, *x = trace_v_plus(rep)
    P = ParamsV(e0, a3, a4, strict=False)
    X = _b34(tuple(x), P)
    return (1 / e0, a3, a4, *X)


def point_of(rep, which: str = "+") -> SurfacePoint:
    """The trace point of ``rep`` as a SurfacePoint (C_VI for RepVI, C_V otherwise)."""
    from .surfaces import ParamsVI

    if isinstance(rep, RepVI):
        a1, a2, a3, a4, *x = trace_vi(rep)
        return SurfacePoint(VI, x, ParamsVI.from_traces(a1, a2, a3, a4))
    e0, a3, a4, *x = trace_v_plus(rep) if which == "+" else trace_v_minus(rep)
    return SurfacePoint(V, x, ParamsV(e0, a3, a4, strict=False))


def reconstruct_v(point: SurfacePoint, params: ParamsV | None = None, kappa=1) -> RepV:
    """A RepV over ``point`` in the gauge u2 = 1."""
    P = params or point.params
    x1, x2, x3 = point.x
    e0, a3 = P.e0, P.a3
    u1 = (x3 - e0 - 1 / e0) / e0
    gamma3 = x2 / e0 - a3 + x1
    if u1 == 0:
        raise NonGenericPoint("x3 = e0 + 1/e0 forces u1·u2 = 0")
    if gamma3 == 0:
        raise NonGenericPoint("x2/e0 − a3 + x1 = 0 forces γ3 = 0")
    alpha3, delta3 = a3 - x1, x1
    beta3 = (alpha3 * delta3 - 1) / gamma3
    rep = RepV.build(e0, u1, 1, Mat2(alpha3, beta3, gamma3, delta3), kappa)
    if rep.M4.tr != P.a4:
        raise NonGenericPoint("point is not on C_V for these parameters")
    return rep


def d_conjugacy_ratio(A, B) -> Fraction | None:
    """r = m² with diag(m,1/m)⁻¹·A·diag(m,1/m) = B slot by slot, or None."""
    r = None
    for X, Y in zip(A.mats, B.mats):
        if X.a != Y.a or X.d != Y.d:
            return None
        for p, q in ((X.c, Y.c), (Y.b, X.b)):
            if (p == 0) != (q == 0):
                return None
            if p != 0:
                s = q / p
                if r is None:
                    r = s
                elif r != s:
                    return None
    return Fraction(1) if r is None else r


def d_conjugate(A, B) -> bool:
    return d_conjugacy_ratio(A, B) is not None


# -- confluence --

def phi_kappa_rep(rep: RepV, kappa=None) -> RepVI:
    k = rep.kappa if kappa is None else as_q(kappa)
    D = Mat2.diag(k)
    return RepVI(rep.U1 @ D, Mat2.diag(1 / k) @ rep.M0 @ rep.U2, rep.M3, rep.M4)


def phi_kappa_inv_rep(rep: RepVI, kappa, e0, branch: str = "+") -> RepV:
    """Undo :func:`phi_kappa_rep` up to diagonal conjugation.

    The mixed basis pairs the M2-eigenvector for e0/κ with the M1-eigenvector
    for 1/κ (branch "+"); branch "−" uses 1/κ and 1/e0 in their place.
    """
    k, e0 = as_q(kappa), as_q(e0)
    if branch in ("-", "−"):
        k, e0 = 1 / k, 1 / e0
    elif branch != "+":
        raise ValueError("branch must be '+' or '-'")
    u = eigenvector(rep.M2, e0 / k)
    v = eigenvector(rep.M1, 1 / k)
    det = u[0] * v[1] - u[1] * v[0]
    if det == 0:
        raise ReduciblePair("M1 and M2 share an eigenline")
    Q = Mat2(u[0], v[0], u[1], v[1])
    A1, A2 = rep.M1.conj(Q), rep.M2.conj(Q)
    L, D, U = ldu_mats(A1 @ A2)
    return RepV(L, D, U, rep.M3.conj(Q), rep.M4.conj(Q), k)


def is_reducible_pair(M: Mat2, N: Mat2) -> bool:
    t = (M @ N).tr
    a, b = M.tr, N.tr
    return t * t - a * b * t + a * a + b * b - 4 == 0


def _eigenlines(M: Mat2) -> list:
    if M.is_scalar():
        return [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    return [eigenvector(M, lam) for lam in set(rational_eigenvalues(M))]


def shares_eigenline(M: Mat2, N: Mat2) -> bool:
    """Brute-force check over the eigenlines of whichever matrix has rational eigenvalues."""
    try:
        lines, other = _eigenlines(M), N
    except IrrationalEigenvector:
        lines, other = _eigenlines(N), M
    if M.is_scalar() or N.is_scalar():
        return True
    for x, y in lines:
        nx, ny = other.a * x + other.b * y, other.c * x + other.d * y
        if nx * y - ny * x == 0:
            return True
    return False


# -- braids at matrix level --

def _recipe12(rep: RepVI, inverse: bool = False) -> RepVI:
    """M3, M4 ↦ Y⁻¹·M·Y with Y = M1M2 (Y⁻¹ in place of Y when ``inverse``)."""
    M1, M2, M3, M4 = rep.mats
    Y = M1 @ M2
    Y = Y.inv() if inverse else Y
    return RepVI(M1, M2, M3.conj(Y), M4.conj(Y))


def _recipe23(rep: RepVI, inverse: bool = False) -> RepVI:
    """M1, M4 ↦ X⁻¹·M·X with X = M2M3."""
    M1, M2, M3, M4 = rep.mats
    X = M2 @ M3
    X = X.inv() if inverse else X
    return RepVI(M1.conj(X), M2, M3, M4.conj(X))


def braid_mat(rep: RepVI, which, inverse: bool = False) -> RepVI:
    """Matrix lift of h_{i,j}: trace_vi∘braid_mat = h_{i,j}∘trace_vi.

    The conjugation recipes above lift h_{i,j}⁻¹, so the forward braid runs
    them with the inverted conjugator.
    """
    which = tuple(which)
    if which == (1, 2):
        return _recipe12(rep, not inverse)
    if which == (2, 3):
        return _recipe23(rep, not inverse)
    if which == (3, 1):
        # h31 = h23⁻¹∘h12⁻¹
        if inverse:
            return _recipe12(_recipe23(rep, True), True)
        return _recipe23(_recipe12(rep))
    raise ValueError(f"unknown braid {which}")


def g23_mat(rep: RepV, kappa) -> RepV:
    """Matrix lift of g23(κ): confluence, the M1, M4 ↦ (M2M3)⁻¹·M·(M2M3) conjugation, and back."""
    k = as_q(kappa)
    alpha3, gamma3 = rep.M3.a, rep.M3.c
    if alpha3 + rep.u2 * gamma3 == 0:
        raise PolarLocus("α3 + u2·γ3 = 0 (the x2 = 0 locus)")
    vi = phi_kappa_rep(rep, k)
    return phi_kappa_inv_rep(_recipe23(vi), k, rep.e0)


# -- random tuples --

def random_sl2(sampler: SeededSampler, height: int = 6) -> Mat2:
    while True:
        a = sample_rational(sampler, height=height, nonzero=True)
        b = sample_rational(sampler, height=height)
        c = sample_rational(sampler, height=height)
        if b == 0 and c == 0:
            continue
        # solve a·d − b·c = 1 for d
        return Mat2(a, b, c, (1 + b * c) / a)


def random_rep_vi(sampler: SeededSampler) -> RepVI:
    return RepVI.closing(random_sl2(sampler), random_sl2(sampler), random_sl2(sampler))


def random_rep_v(sampler: SeededSampler, kappa=None) -> RepV:
    e0 = sample_rational(sampler, excluded=(1, -1), nonzero=True, height=6)
    u1 = sample_rational(sampler, nonzero=True, height=6)
    u2 = sample_rational(sampler, nonzero=True, height=6)
    k = kappa if kappa is not None else sample_rational(sampler, excluded=(1, -1), nonzero=True, height=5)
    return RepV.build(e0, u1, u2, random_sl2(sampler), k)


# -- moduli of the linear system --

@dataclass(frozen=True)
class ModuliSystem:
    """Trace-free A0 = [[a0, b0], [c0, −a0]], A1 likewise, A∞ = diag(t/2, −t/2)."""

    a0: Fraction
    b0: Fraction
    c0: Fraction
    a1: Fraction
    b1: Fraction
    c1: Fraction
    t: Fraction

    def __post_init__(self):
        for f in ("a0", "b0", "c0", "a1", "b1", "c1", "t"):
            object.__setattr__(self, f, as_q(getattr(self, f)))
        if self.t == 0:
            raise ValueError("t must be nonzero")

    @property
    def A0(self) -> Mat2:
        return Mat2(self.a0, self.b0, self.c0, -self.a0)

    @property
    def A1(self) -> Mat2:
        return Mat2(self.a1, self.b1, self.c1, -self.a1)

    def t_action(self, m) -> "ModuliSystem":
        """Conjugation by diag(m, 1/m): b ↦ b·m², c ↦ c/m²."""
        m2 = as_q(m) ** 2
        return ModuliSystem(self.a0, self.b0 * m2, self.c0 / m2, self.a1, self.b1 * m2, self.c1 / m2, self.t)

    def p_action(self) -> "ModuliSystem":
        """A ↦ −Aᵀ on A0, A1 and A∞ (so t ↦ −t)."""
        return ModuliSystem(-self.a0, -self.c0, -self.b0, -self.a1, -self.c1, -self.b1, -self.t)


def moduli_invariants(s: ModuliSystem) -> tuple:
    """(α0, α1, α∞, τ, β0, β1)."""
    return (s.a0 ** 2 + s.b0 * s.c0,
            s.a1 ** 2 + s.b1 * s.c1,
            (s.a0 + s.a1) ** 2,
            s.a0 * s.t,
            s.b0 * s.c1 + s.b1 * s.c0,
            s.t * (s.b0 * s.c1 - s.b1 * s.c0))


def moduli_reconstruct(inv, t=1) -> ModuliSystem:
    """A system with the given invariants, normalized by b0 = 1, for the chosen t."""
    al0, al1, alinf, tau, beta0, beta1 = (as_q(v) for v in inv)
    t = as_q(t)
    a0 = tau / t
    if a0 == 0:
        raise NonGeneric("a0 = 0")
    c0 = al0 - a0 * a0
    if c0 == 0:
        raise NonGeneric("b0·c0 = 0")
    c1 = (beta0 + beta1 / t) / 2
    b1 = (beta0 - beta1 / t) / (2 * c0)
    a1 = (alinf - al0 - al1 + c0 + b1 * c1) / (2 * a0)
    return ModuliSystem(a0, 1, c0, a1, b1, c1, t)


def random_moduli(sampler: SeededSampler, height: int = 9) -> ModuliSystem:
    vals = [sample_rational(sampler, nonzero=True, height=height) for _ in range(7)]
    return ModuliSystem(*vals)
