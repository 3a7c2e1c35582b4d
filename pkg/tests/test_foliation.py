import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubicdyn import foliation as F
from cubicdyn.errors import ChartDegenerate, NonGenericAlpha, NotSingular, UnknownChart

AL = F.AlphaParams(Fraction(1, 3), Fraction(1, 5), Fraction(1, 7))
alphas = st.builds(F.AlphaParams, *(st.fractions(min_value=-3, max_value=3, max_denominator=12) for _ in range(3)))


def _census(al=AL, aliases=True):
    return F.singular_census(al, with_aliases=aliases)


def test_census_labels():
    labels = [pt.label for pt in _census(aliases=False)]
    assert labels == ["r1", "r2", "r3", "p1", "p2", "p3", "p4", "s1", "s2", "s3", "s4", "s5"]


def test_census_points_are_exact_zeros():
    for pt in _census():
        assert all(c == 0 for c in F.vector_field(pt.chart, pt.coords, AL))


def test_regular_point_coordinates():
    by = {pt.label: pt for pt in _census(aliases=False)}
    a1, a3 = AL.a1, AL.a3
    assert by["r1"].coords == (0, a1 / (a1 + a3), 0)
    assert by["r2"].coords == (a1 - a3, a1 / (a1 - a3), 0)


def test_polar_char_polys():
    by = {(pt.chart, pt.label): pt for pt in _census()}
    assert by[("U1", "p1")].char_poly == [2, 5, 4, 1]
    assert by[("U1", "p2")].char_poly == [-2, 5, -4, 1]


def test_saddle_nodes_degenerate():
    assert all(pt.char_poly[0] == 0 for pt in _census() if pt.label.startswith("s"))


def test_alias_of_r1_is_r4():
    r4 = [pt for pt in _census() if pt.label == "r4"]
    assert r4 and r4[0].alias_of == "r1"


def test_non_generic_alpha():
    with pytest.raises(NonGenericAlpha):
        F.singular_census(F.AlphaParams(Fraction(1, 3), 0, Fraction(-1, 3)))
    with pytest.raises(NonGenericAlpha):
        F.singular_census(F.AlphaParams(Fraction(1, 3), 0, Fraction(1, 3)))


def test_linearization_requires_zero():
    with pytest.raises(NotSingular):
        F.linearization("U1", (1, 1, 1), AL)
    with pytest.raises(UnknownChart):
        F.vector_field("U2", (0, 0, 0), AL)


def test_char_poly_diagonal():
    J = [[1, 0, 0], [0, 2, 0], [0, 0, 3]]
    assert F.char_poly(J) == [-6, 11, -6, 1]


def test_backlund_examples():
    out, at = F.backlund_pi(F.ChartPoint("U3", (2, 3, 5)), AL)
    assert out.chart == "tU3" and out.coords == (2, -2, 5)
    assert at == AL.tilde()
    back, al = F.backlund_pi_inv(out, at)
    assert back.coords == (2, 3, 5) and al == AL
    out, _ = F.backlund_pi(F.ChartPoint("U4", (2, 3, 5)))
    assert out.coords == (10, Fraction(-2, 5), 5)
    with pytest.raises(ChartDegenerate):
        F.backlund_pi(F.ChartPoint("U4", (2, 3, 0)))


def test_tilde_round_trip():
    assert AL.tilde().untilde() == AL
    assert sum(AL.all4()) == 1


@settings(max_examples=30, deadline=None)
@given(st.tuples(*(st.fractions(min_value=-4, max_value=4, max_denominator=9) for _ in range(3))))
def test_chart_transitions_round_trip(p):
    try:
        assert F.w_to_u(F.u_to_w(p)) == tuple(Fraction(c) for c in p)
        assert F.v_to_u(F.u_to_v(p)) == tuple(Fraction(c) for c in p)
    except ChartDegenerate:
        pass


@settings(max_examples=30, deadline=None)
@given(st.tuples(*(st.fractions(min_value=-4, max_value=4, max_denominator=9) for _ in range(3))))
def test_u3_u4_fields_are_one_foliation(p):
    # the U3 field pushed to U4 is parallel to the U4 field there
    try:
        q = F.u_to_w(F.v_to_u(p))
        push = F.pushforward(lambda t: F.u_to_w(F.v_to_u(t)), F._u3_field, p, AL)
    except ChartDegenerate:
        return
    w = F.vector_field("U4", q, AL)
    cross = (push[0] * w[1] - push[1] * w[0], push[1] * w[2] - push[2] * w[1])
    assert cross == (0, 0)


@settings(max_examples=30, deadline=None)
@given(alphas)
def test_census_generic_alpha(al):
    try:
        pts = F.singular_census(al)
    except (NonGenericAlpha, ZeroDivisionError):
        return
    assert len([p for p in pts if p.alias_of is None]) == 12


def test_normal_form_invariants():
    c1, c2, a0 = 0.3 + 0.2j, -0.4 + 0.1j, 0.25 - 0.5j
    u1, u2 = F.normal_form_flow(0.7 + 0.3j, c1, c2, a0)
    assert abs(u1 * u2 - c1 * c2) <= 1e-12 * abs(c1 * c2)
    st0 = F.NormalFormState(c1, c2)
    n = F.formal_monodromy_N(st0, a0)
    assert abs(n.h - st0.h) <= 1e-12 * abs(st0.h)
    t = F.torus_action(st0, [2j * cmath.pi * -a0, 8j * cmath.pi])
    assert abs(n.c1 - t.c1) <= 1e-12 * abs(t.c1)


def test_normal_form_pole():
    with pytest.raises(ZeroDivisionError):
        F.normal_form_flow(0, 1, 1, 0)
