from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubicdyn.dynamics import maps
from cubicdyn.errors import ChartDegenerate, NonGenericParams, NotOnSurface, PolarLocus
from cubicdyn.numeric import SeededSampler
from cubicdyn.surfaces import (V, VI, Line, ParamsV, ParamsVI, SurfacePoint, c_value, eval_f, factor_conic,
                               kaneko_points, lift_to_cv, lines_cv, lines_cvi, random_params_v,
                               random_params_vi, sample_surface, symplectic_ratio)
from cubicdyn.errors import Irreducible

P0 = ParamsV(2, 3, 5)


def test_theta_v_worked():
    assert P0.theta == (13, 11, 2, 35)
    assert ParamsV(2, 4, 17).theta == (38, 25, 2, 141)


def test_theta_vi_identity_rep():
    P = ParamsVI.from_traces(2, 2, 2, 2)
    assert P.theta == (8, 8, 8, 28)
    assert eval_f(VI, (2, 2, 2), P) == 0


def test_eval_f_v_points():
    assert eval_f(V, (1, 1, 13), P0) == 0
    assert eval_f(V, (51, -3, 13), P0) == 0


def test_lift_to_cv():
    assert lift_to_cv(1, 1, P0).x == (1, 1, 13)
    assert lift_to_cv(Fraction(1, 2), 2, P0).x == (Fraction(1, 2), 2, Fraction(43, 4))
    with pytest.raises(PolarLocus):
        lift_to_cv(1, 2, P0)


def test_surface_point_validates():
    with pytest.raises(NotOnSurface):
        SurfacePoint(V, (1, 1, 1), P0)


def test_genericity_rejected():
    for bad in ((1, 3, 5), (-1, 3, 5), (2, 2, 5), (2, 3, -2)):
        with pytest.raises(NonGenericParams):
            ParamsV(*bad)
    # e0·e3·e4 = 1
    with pytest.raises(NonGenericParams):
        ParamsV.from_eigen(Fraction(1, 6), 2, 3)
    assert not ParamsV(Fraction(1, 6), Fraction(5, 2), Fraction(10, 3), strict=False).generic


def test_minus_sheet():
    assert P0.minus().e0 == Fraction(1, 2)
    assert P0.theta_minus == P0.minus().theta


def test_sampling_deterministic_and_on_surface():
    a = sample_surface(V, P0, SeededSampler(1))
    b = sample_surface(V, P0, SeededSampler(1))
    assert a == b and eval_f(V, a.x, P0) == 0


def test_sampling_many():
    s = SeededSampler(11)
    for i in range(200):
        sub = s.split(i)
        for fam, P in ((V, random_params_v(sub)), (VI, random_params_vi(sub))):
            p = sample_surface(fam, P, sub)
            assert eval_f(fam, p.x, p.params) == 0


def test_vi_sampling_via_phi_worked():
    q = maps.phi_kappa(1)(lift_to_cv(1, 1, P0))
    assert q.family == VI and q.x == (Fraction(3, 2), Fraction(-1, 2), 13)


def test_symplectic_identity():
    assert symplectic_ratio(maps.identity(), lift_to_cv(1, 1, P0)) == 1


@pytest.mark.parametrize("name", ["sigma1", "sigma2", "g"])
def test_symplectic_declared_signs(name):
    m = {"sigma1": maps.sigma(1), "sigma2": maps.sigma(2), "g": maps.tame_g}[name]
    s = SeededSampler(3)
    seen = 0
    for i in range(30):
        sub = s.split(i)
        p = sample_surface(V, random_params_v(sub), sub)
        try:
            r = symplectic_ratio(m, p)
        except ChartDegenerate:
            continue
        assert r == m.sign
        seen += 1
    assert seen >= 20


@given(st.fractions(max_denominator=20).filter(lambda q: q != 0),
       st.fractions(max_denominator=20).filter(lambda q: q != 0))
def test_c_value_symmetries(a, b):
    assert c_value(a, b) == c_value(b, a) == c_value(1 / a, 1 / b)


def test_c_value_example():
    assert c_value(2, 3) == Fraction(13, 6)


def _check_line(ln, family, params):
    for t in (0, 1, 2):
        x = ln.at(t)
        assert eval_f(family, x, params) == 0
        assert ln.form(x) == 0 and x[ln.k - 1] == ln.c


def test_lines_cv_worked():
    P = ParamsV.from_eigen(4, 3, 2)
    lines = lines_cv(P)
    assert len(lines) == 18 and all(isinstance(ln, Line) for ln in lines)
    for ln in lines:
        _check_line(ln, V, P)
    deltas = {ln.c for ln in lines if ln.label.startswith("Delta")}
    assert deltas == {3, Fraction(1, 3), 8, 2}
    pair = [ln for ln in lines if ln.k == 3 and ln.c == 4 + Fraction(1, 4)]
    assert len(pair) == 2


def test_lines_cv_irrational_pair_recorded():
    P = ParamsV.from_eigen(3, 5, 7)
    recs = [ln for ln in lines_cv(P) if not isinstance(ln, Line)]
    assert any(r.c == 3 + Fraction(1, 3) for r in recs)


def test_lines_cvi_random():
    s = SeededSampler(4)
    for i in range(10):
        P = random_params_vi(s.split(i))
        try:
            lines = lines_cvi(P)
        except Exception:
            continue
        assert len(lines) == 24
        for ln in lines:
            _check_line(ln, VI, P)


def test_factor_conic_matches_l_forms():
    P = ParamsVI(2, 3, 5, 7)
    c = c_value(2, 3)
    f1, f2 = factor_conic(3, c, P)
    lines = [ln for ln in lines_cvi(P) if ln.k == 3 and ln.c == c]
    for ln in lines:
        x = ln.at(1)
        assert f1(x) * f2(x) == 0


def test_factor_conic_generic_plane_irreducible():
    with pytest.raises(Irreducible):
        factor_conic(3, 11, ParamsVI(2, 3, 5, 7))


def test_kaneko_points_vi():
    P = ParamsVI(2, 3, 5, 7)
    pts = kaneko_points(P)
    assert len(pts) == 12
    owner = {3: (1, 2), 1: (2, 3), 2: (3, 1)}
    for kp in pts:
        assert eval_f(VI, kp.point.x, P) == 0
        assert tuple(maps.braid_h_raw(owner[kp.k], kp.point.x, P.theta)) == kp.point.x
    via_grad = sorted(kp.point.x for kp in kaneko_points(P, via="gradient"))
    assert via_grad == sorted(kp.point.x for kp in pts)


def test_kaneko_points_v_fixed_by_g():
    P = ParamsV.from_eigen(4, 3, 2)
    pts = kaneko_points(P)
    assert len(pts) == 3
    for kp in pts:
        assert tuple(maps.tame_g.raw(kp.point.x, P)) == kp.point.x
