from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubicdyn import cremona as C
from cubicdyn.dynamics.maps import FactorList
from cubicdyn.errors import ChartDegenerate, ParseError, PoleHit
from cubicdyn.numeric import SeededSampler

Q = Fraction
points = st.tuples(*(st.builds(Fraction, st.integers(-40, 40).filter(bool), st.integers(1, 9)) for _ in range(2)))


def test_p_orbit_period_five():
    pt = (Q(1), Q(1))
    orbit = [pt]
    for _ in range(5):
        orbit.append(C.apply(C.blanc_p, orbit[-1]))
    assert orbit[1:5] == [(1, 2), (2, 3), (3, 2), (2, 1)]
    assert orbit[5] == pt


def test_sigma_involution():
    assert C.apply(C.sigma, (2, Q(-1, 3))) == (Q(1, 2), -3)
    assert C.apply(C.sigma @ C.sigma, (2, 5)) == (2, 5)
    with pytest.raises(PoleHit):
        C.apply(C.sigma, (0, 1))


def test_monomial_example():
    w = C.MonomialElem(0, 1, -1, 0)
    assert C.apply(w, (2, 3)) == (3, Q(1, 2))
    with pytest.raises(ValueError):
        C.MonomialElem(2, 0, 0, 1)


def test_monomial_conjugates_torus():
    w = C.MonomialElem(2, 1, 1, 1)
    t = C.TorusElem(2, 3)
    lhs = w @ t @ w.inverse()
    rhs = w.conj_torus(t)
    for pt in ((2, 5), (Q(1, 3), 7)):
        assert C.apply(lhs, pt) == C.apply(rhs, pt)


def test_dj1_closed_forms():
    f = C.DeJonquieresElem(2, FactorList(Q(3), 1, ((Q(1), 1),)))
    g = C.DeJonquieresElem(Q(1, 3), FactorList(Q(1), 0, ((Q(-2), 2),)))
    for pt in ((Q(1, 5), 3), (7, Q(-2, 3))):
        assert C.apply(f @ g, pt) == C.apply(f.times(g), pt)
        assert C.apply(f @ f.inverse(), pt) == pt
    assert C.commutator_closed(f, g).lam == 1


def test_unipotent_commutator_fixes_u():
    f = C.DeJonquieresElem(1, FactorList(Q(1), 0, ((Q(2), 1),)))
    g = C.DeJonquieresElem(3, FactorList(Q(1), 0, ((Q(-1), 1),)))
    c = C.commutator(f, g)
    assert f.unipotent and not g.unipotent
    u, v = Q(1, 7), Q(5)
    assert C.apply(c, (u, v))[0] == u


@pytest.mark.parametrize("name", ["T", "W", "B1", "U1", "B1-", "p"])
def test_log_symplectic_sign_constant(name):
    _, expected = C.family_samplers()[name]
    assert C.family_ratios(SeededSampler(41), 30)[name] == {expected}


def test_log_symplectic_examples():
    assert C.log_symplectic_ratio(C.sigma, (2, 3)) == 1
    assert C.log_symplectic_ratio(C.TorusElem(5, 7), (2, 3)) == 1
    assert C.log_symplectic_ratio(C.blanc_p, (2, 3)) == 1
    with pytest.raises(ChartDegenerate):
        C.log_symplectic_ratio(C.sigma, (0, 3))


@settings(max_examples=40, deadline=None)
@given(points)
def test_p_has_order_five(pt):
    try:
        assert C.apply(C.power(C.blanc_p, 5), pt) == pt
    except PoleHit:
        pass


@settings(max_examples=40, deadline=None)
@given(points, st.integers(-5, 5).filter(bool), st.integers(-5, 5).filter(bool))
def test_torus_composition(pt, a, b):
    t, s = C.TorusElem(a, b), C.TorusElem(b, a)
    assert C.apply(t @ s, pt) == C.apply(t.times(s), pt)


def test_parse_factor_list():
    r = C.parse_factor_list("3 * u^-1 * (1-2/3u)^2")
    assert r == FactorList(Q(3), -1, ((Q(-2, 3), 2),))
    assert C.parse_factor_list(C.format_factor_list(r)) == r
    with pytest.raises(ParseError):
        C.parse_factor_list("")
    with pytest.raises(ParseError):
        C.parse_factor_list("0 * u")


@pytest.mark.parametrize("text,pt,want", [
    ("t(2,3)", (1, 1), (2, 3)),
    ("w[[0,1],[-1,0]]", (2, 3), (3, Q(1, 2))),
    ("dj1(2; u * (1+u))", (1, 1), (2, 2)),
    ("p^5", (3, 4), (3, 4)),
    ("sigma . t(2,2)", (1, 1), (Q(1, 2), Q(1, 2))),
])
def test_parse_elem(text, pt, want):
    assert C.apply(C.parse_elem(text), pt) == want


@pytest.mark.parametrize("bad", ["q", "t(1)", "w[[1,1],[1,1]]", "dj1(0; u)", "t(0.5,1)"])
def test_parse_elem_errors(bad):
    with pytest.raises((ParseError, ValueError)):
        C.parse_elem(bad)


def test_relations_suite_passes():
    verdicts = C.group_relations_suite(SeededSampler(0), 20)
    assert len(verdicts) == 8 and all(v.ok for v in verdicts)
