from fractions import Fraction

import pytest

from cubicdyn.dynamics import (EQUAL, INCONCLUSIVE, UNEQUAL, GeneratorWord, compare_maps, compose_all,
                               identity, maps, orbit)
from cubicdyn.errors import ChartDegenerate, ParseError, PolarLocus, ZeroDenominator
from cubicdyn.numeric import SeededSampler
from cubicdyn.surfaces import (V, VI, ParamsV, ParamsVI, SurfacePoint, eval_f, f_vi, kaneko_points, lift_to_cv,
                               lines_cv, random_params_v, sample_surface)

P0 = ParamsV(2, 3, 5)
X0 = lift_to_cv(1, 1, P0)
Q = Fraction


def S(seed=0):
    return SeededSampler(seed)


# -- tame and braid maps --

def test_sigma_chain_worked():
    a = maps.sigma(2)(X0)
    assert a.x == (1, -3, 13)
    assert maps.sigma(1)(a).x == (51, -3, 13)
    assert maps.tame_g(X0).x == (51, -3, 13)
    assert maps.pure_braid(X0.x, P0) == (51, -3, 13)


def test_g_inverse():
    assert maps.tame_g_inv(maps.tame_g(X0)).x == X0.x


def test_half_braid_worked():
    b = maps.half_braid_b34(X0)
    assert b.x == (Q(-3, 2), Q(1, 2), 13)
    assert b.params.e0 == Q(1, 2) and b.params.theta[:2] == (Q(11, 2), Q(13, 2))
    bb = maps.half_braid_b34(b)
    assert bb.x == (51, -3, 13) and bb.params == P0


def test_braid_h_identity_point():
    P = ParamsVI.from_traces(2, 2, 2, 2)
    for ij in ((1, 2), (2, 3), (3, 1)):
        assert maps.braid_h(ij)(SurfacePoint(VI, (2, 2, 2), P)).x == (2, 2, 2)


def test_braid_h_matches_expanded_display():
    s = S(2)
    for i in range(30):
        sub = s.split(i)
        x = tuple(Q(sub.randint(-9, 9), sub.randint(1, 5)) for _ in range(3))
        th = tuple(Q(sub.randint(-9, 9), sub.randint(1, 5)) for _ in range(4))
        for ij in ((1, 2), (2, 3), (3, 1)):
            assert maps.braid_h_raw(ij, x, th) == maps.braid_h_display(ij, x, th)
            assert maps.braid_h_inv_raw(ij, maps.braid_h_raw(ij, x, th), th) == x
            assert f_vi(maps.braid_h_raw(ij, x, th), th) == f_vi(x, th)


# -- confluence --

def test_phi_worked():
    q = maps.phi_kappa(1)(X0)
    assert q.x == (Q(3, 2), Q(-1, 2), 13)
    assert q.params.a == (2, Q(5, 2), 3, 5)
    assert q.params.theta == (Q(35, 2), Q(37, 2), 20, Q(461, 4))
    assert eval_f(VI, q.x, q.params) == 0


def test_phi_inverse_pole():
    k = Q(3)
    c = maps.phi_kappa_pole(P0, k)
    assert c == Q(9, 2) + Q(2, 9)
    with pytest.raises(PolarLocus):
        maps._phi_inv((1, 1, c), P0, k)


def test_phi_round_trip():
    v = compare_maps(maps.phi_kappa_inv(Q(2, 3), P0) @ maps.phi_kappa(Q(2, 3)), identity(V), S(1), 50, params=P0)
    assert v.kind == EQUAL


# -- confluent family --

def test_g23_worked():
    img = maps.g23(1)(X0)
    assert img.x == (2, Q(1, 2), Q(31, 4))
    assert maps.p1(img.x, P0) == (2, -1)
    back = maps.g32(1)(img)
    assert maps.p1(back.x, P0) == (1, -1) and back.x == X0.x


def test_g23_pole_on_x2_zero():
    x1 = Q(5)
    # points with x2 = 0: F_V = x1^2 - θ1 x1 - e0 x3 + θ4 = 0
    x3 = (x1 * x1 - 13 * x1 + 35) / 2
    p = SurfacePoint(V, (x1, 0, x3), P0)
    with pytest.raises(ZeroDivisionError):
        maps.g23(1)(p)


@pytest.mark.parametrize("k", [Q(1), Q(2, 3), Q(-5, 2)])
def test_confluent_relations(k):
    assert compare_maps(compose_all([maps.tame_g, maps.g23(k), maps.g31(k)]), identity(), S(3), 40).ok
    assert compare_maps(maps.g13(k), maps.tame_g @ maps.g23(k), S(4), 40).ok
    assert compare_maps(maps.g23(k) @ maps.g32(k), identity(), S(5), 40).ok
    assert compare_maps(maps.g23(k), maps.g23(1) @ maps.functional_torus(2, maps.FactorList(k * k)), S(6), 40).ok
    assert compare_maps(maps.g23(k), maps.g23_chart(k), S(7), 40).ok


# -- log-canonical charts and cluster values --

def test_p1_inverse():
    assert maps.p1_inverse(1, -1, P0).x == (1, 1, 13)
    assert maps.p1_inverse(Q(1, 2), -1, P0).x == (Q(1, 2), 2, Q(43, 4))
    with pytest.raises(ZeroDenominator):
        maps.p1_inverse(0, -1, P0)


def test_chart_round_trips():
    s = S(8)
    for i in range(30):
        sub = s.split(i)
        P = random_params_v(sub)
        p = sample_surface(V, P, sub)
        for n in (-2, -1, 0, 1, 2, 3):
            try:
                y, z = maps.chart_p(n, p.x, P)
                assert maps.chart_p_inv(n, y, z, P) == p.x
                z, y = maps.chart_q(n, p.x, P)
                assert maps.chart_q_inv(n, z, y, P) == p.x
            except ZeroDivisionError:
                pass


# -- canonical dynamics --

def test_stokes_chain_worked():
    a = maps.stokes_s(1)(X0)
    assert a.x == (Q(1, 2), 2, Q(43, 4))
    assert maps.chart_p(2, a.x, P0) == (2, -20)
    b = maps.formal_monodromy(a)
    assert maps.chart_p(2, b.x, P0) == (2, -5)
    assert maps.chart_q(2, b.x, P0)[1] == Q(-3, 2)
    c = maps.stokes_s(2)(b)
    assert maps.chart_q(2, c.x, P0)[1] == 1
    assert c.x == (51, -3, 13)


def test_canonical_relations():
    assert compare_maps(maps.tame_g, compose_all([maps.stokes_s(2), maps.formal_monodromy, maps.stokes_s(1)]),
                        S(9), 50).ok
    assert compare_maps(maps.stokes_s_inv(1),
                        maps.g23(1) @ maps.functional_torus(2, maps.FactorList(power=2)), S(10), 50).ok
    for k in (-1, 0, 1):
        assert compare_maps(maps.stokes_s(k + 2),
                            compose_all([maps.tame_g, maps.stokes_s(k), maps.tame_g_inv]), S(11 + k), 50).ok


def test_half_monodromy_squares_to_inverse():
    sq = maps.formal_monodromy_sqrt @ maps.formal_monodromy_sqrt
    assert compare_maps(sq, maps.formal_monodromy_inv, S(12), 40).ok
    assert compare_maps(sq, maps.formal_monodromy, S(12), 40).kind == UNEQUAL


def test_mhat_fixes_y2_and_commutes_with_torus():
    s = S(13)
    for i in range(20):
        sub = s.split(i)
        p = sample_surface(V, random_params_v(sub), sub)
        try:
            q = maps.formal_monodromy(p)
        except ZeroDivisionError:
            continue
        assert maps.chart_p(2, q.x, p.params)[0] == maps.chart_p(2, p.x, p.params)[0]
    t = maps.torus_t(2, Q(3, 7))
    assert compare_maps(maps.formal_monodromy @ t, t @ maps.formal_monodromy, S(14), 40).ok


def test_stokes_conjugates_tori():
    lam = Q(3, 5)
    lhs = compose_all([maps.stokes_s(1), maps.torus_t(1, lam), maps.stokes_s_inv(1)])
    assert compare_maps(lhs, maps.torus_t(2, 1 / lam), S(15), 10).ok


def test_torus_charts():
    lam = Q(3)
    y1, z1 = maps.p1(maps.torus_t(1, lam)(X0).x, P0)
    assert (y1, z1) == (1, -3)
    z, y = maps.chart_q(1, maps.torus_t(2, lam)(X0).x, P0)
    assert (z, y) == (Q(-1, 3), 1)


def test_s1_along_delta_lines():
    P = ParamsV.from_eigen(4, 3, 2)
    for ln in lines_cv(P)[:4]:
        for t in (0, 3):
            x = ln.at(t)
            y = maps.stokes_s1_closed(x, P)
            assert y[:2] == x[:2]
            assert y[2] - x[2] == maps.delta_translation(P, ln.c)
            assert eval_f(V, y, P) == 0


def test_s1_closed_form_matches_chart_action():
    s = S(16)
    for i in range(30):
        sub = s.split(i)
        P = random_params_v(sub)
        p = sample_surface(V, P, sub)
        try:
            assert maps.stokes_s(1).raw(p.x, P) == maps.stokes_s1_closed(p.x, P)
        except ZeroDivisionError:
            pass


def test_g_preserves_kaneko_planes():
    P = ParamsV.from_eigen(4, 3, 2)
    for kp in kaneko_points(P):
        assert maps.tame_g.raw(kp.point.x, P)[2] == kp.c


def test_factor_list():
    r = maps.FactorList(Q(2), 1, ((Q(3), 2), (Q(-1), -1)))
    t = Q(1, 2)
    assert r(t) == 2 * t * (1 + 3 * t) ** 2 / (1 - t)
    assert r.inverse()(t) * r(t) == 1
    assert r.times(r.inverse()) == maps.FactorList(Q(1), 0, ())
    assert r.degree() == 2
    with pytest.raises(PolarLocus):
        r(1)


# -- harness --

def test_compare_maps_examples():
    s1 = maps.sigma(1)
    assert compare_maps(s1 @ s1, identity(), S(17), 20).kind == EQUAL
    v = compare_maps(maps.stokes_s(1), s1, S(18), 20)
    assert v.kind == UNEQUAL and "point" in v.witness


def test_compare_maps_inconclusive():
    def always_polar(x, P):
        raise PolarLocus("nowhere defined")

    bad = maps.SurfaceMap("bad", always_polar)
    v = compare_maps(bad, identity(), S(19), 5)
    assert v.kind == INCONCLUSIVE and v.trials == 0


def test_compare_maps_rejects_mixed_sources():
    with pytest.raises(ValueError):
        compare_maps(maps.tame_g, identity(VI), S(0), 1)
    with pytest.raises(ValueError):
        compare_maps(maps.tame_g, maps.tame_g, S(0), 0)


def test_word_parsing():
    w = GeneratorWord.parse("g23(1/2) . s1 . g^-1")
    assert [g.name for g in w.items] == ["g23", "s", "g"]
    assert str(w) == "g23(1/2) . s1 . g^-1"
    assert GeneratorWord.parse("t2(3) ∘ mhat").items[0].args == (3,)


@pytest.mark.parametrize("bad", ["foo", "s", "g23", "t2(0)", "t2(0.5)", "g . ", "sigma1(2)"])
def test_word_parse_errors(bad):
    with pytest.raises(ParseError):
        GeneratorWord.parse(bad)


def test_word_composition_order():
    w = GeneratorWord.parse("sigma1 . sigma2")
    assert w.to_map()(X0).x == (51, -3, 13)


def test_orbit_involution_period_two():
    o = orbit(GeneratorWord.parse("sigma1"), X0, 10)
    assert o.period == 2 and o.summary()["period"] == 2


def test_orbit_g_stays_in_plane():
    o = orbit(GeneratorWord.parse("g"), X0, 5)
    assert o.period is None and all(p.x[2] == 13 for p in o.points)
    assert o.summary() == {"period": None, "truncated_at": None}


def test_orbit_kaneko_fixed():
    P = ParamsVI(2, 3, 5, 7)
    kp = next(k for k in kaneko_points(P) if k.k == 3)
    o = orbit(GeneratorWord.parse("h12"), kp.point, 5)
    assert o.period == 1


def test_orbit_truncates_at_pole():
    p = SurfacePoint(V, (5, 0, (25 - 65 + 35) / Q(2)), P0)
    o = orbit(GeneratorWord.parse("g23(1)"), p, 5)
    assert o.truncated_at == 1 and o.reason
