from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubicdyn.errors import DivisionFailure, ParseError, SamplerExhausted, ZeroDenominator
from cubicdyn.numeric import (BiLaurent, Dual2, SeededSampler, as_q, exact_divide, jacobian, jet_eval,
                              parse_qlist, qstr, rational_sqrt, sample_rational)
from cubicdyn.surfaces import f_v

rationals = st.builds(Fraction, st.integers(-10**6, 10**6), st.integers(1, 50))
u, v = BiLaurent.u(), BiLaurent.v()


def test_qstr_canonical():
    assert qstr(Fraction(6, 4)) == "3/2"
    assert qstr(Fraction(-8, 4)) == "-2"
    assert as_q("−3/6") == Fraction(-1, 2)


@pytest.mark.parametrize("bad", ["0.5", "1e3", "x", "", 0.5, True])
def test_as_q_refuses_non_rationals(bad):
    with pytest.raises(ParseError):
        as_q(bad)


def test_parse_qlist():
    assert parse_qlist("1, 1/2,-3") == (1, Fraction(1, 2), -3)
    with pytest.raises(ParseError):
        parse_qlist(" , ")


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(2) is None
    assert rational_sqrt(-4) is None


@given(rationals, rationals, rationals)
def test_field_axioms_exact(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


# -- jets --

def test_jet_product_rule():
    assert jet_eval(lambda x, y: x * y, (3, 5)) == (15, 5, 3)


def test_jet_power_rule():
    assert jet_eval(lambda x, y: x ** 2, (7, 1)) == (49, 14, 0)


def test_jet_of_f_v_in_x3():
    theta = (13, 11, 2, 35)
    val, _, d3 = jet_eval(lambda a, b, c: f_v((a, b, c), theta), (1, 1, 13), (0, 2))
    assert val == 0 and d3 == -1


def test_jet_division_by_zero_value():
    with pytest.raises(ZeroDivisionError):
        jet_eval(lambda x, y: 1 / (x - 3), (3, 0))


def test_jet_rules():
    a, b = Dual2(2, 1, 3), Dual2(5, 7, 11)
    p = a * b
    assert (p.value, p.d1, p.d2) == (10, 2 * 7 + 5 * 1, 2 * 11 + 5 * 3)
    q = a / b
    assert q * b == a


@settings(max_examples=20)
@given(st.lists(rationals, min_size=2, max_size=2))
def test_jets_match_formal_partials(pt):
    x, y = pt
    # f = 3x^3 y - x y^2 + 7y: partials 9x^2 y - y^2 and 3x^3 - 2xy + 7
    val, dx, dy = jet_eval(lambda a, b: 3 * a ** 3 * b - a * b * b + 7 * b, (x, y))
    assert val == 3 * x ** 3 * y - x * y * y + 7 * y
    assert dx == 9 * x * x * y - y * y
    assert dy == 3 * x ** 3 - 2 * x * y + 7


def test_jacobian_three_vars():
    J = jacobian(lambda a, b, c: (a * b, b * c, a + c), (2, 3, 5))
    assert J == [[3, 2, 0], [0, 5, 3], [1, 0, 1]]


# -- Laurent polynomials --

def test_exact_divide_examples():
    assert exact_divide(v + 2, BiLaurent.const(1)) == v + 2
    assert exact_divide((v + 2) ** 2, v + 2) == v + 2
    with pytest.raises(DivisionFailure) as info:
        exact_divide(v + 3, v + 2)
    assert info.value.remainder


def test_laurent_monomial_inverse():
    m = BiLaurent.monomial(-2, 3, Fraction(5, 7))
    assert m * BiLaurent.monomial(2, -3, Fraction(7, 5)) == BiLaurent.const(1)
    assert exact_divide(u * v + u, u) == v + 1


def test_no_zero_coefficients():
    p = (u + v) - u
    assert p == v and len(p) == 1
    assert not (u - u)


def test_laurent_evaluate():
    p = u ** -2 * v + 3
    assert p.evaluate(2, 8) == 5


@st.composite
def laurents(draw, max_terms=8):
    n = draw(st.integers(1, max_terms))
    terms = {}
    for _ in range(n):
        e = (draw(st.integers(-3, 3)), draw(st.integers(-3, 3)))
        num = draw(st.integers(-40, 40).filter(bool))
        terms[e] = Fraction(num, draw(st.integers(1, 9)))
    return BiLaurent(terms)


@settings(max_examples=60, deadline=None)
@given(laurents(), laurents())
def test_exact_divide_recovers_quotient(q, den):
    assert exact_divide(q * den, den) == q


@settings(max_examples=40, deadline=None)
@given(laurents(5), laurents(5), laurents(5))
def test_laurent_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


# -- sampling --

def test_sampler_deterministic():
    a = [sample_rational(SeededSampler(5)) for _ in range(3)]
    b = [sample_rational(SeededSampler(5)) for _ in range(3)]
    assert a == b
    s, t = SeededSampler(5), SeededSampler(5)
    assert [sample_rational(s) for _ in range(10)] == [sample_rational(t) for _ in range(10)]


def test_sampler_excludes():
    s = SeededSampler(1)
    assert all(sample_rational(s, excluded=(0,)) != 0 for _ in range(200))


def test_sampler_streams_differ():
    s, t = SeededSampler(1), SeededSampler(2)
    a = [sample_rational(s, height=1000) for _ in range(100)]
    b = [sample_rational(t, height=1000) for _ in range(100)]
    assert sum(x == y for x, y in zip(a, b)) < 5


def test_sampler_split_independent_of_parent_state():
    s = SeededSampler(9)
    c1 = s.split(3).next_u64()
    s.next_u64()
    assert s.split(3).next_u64() == c1


def test_sampler_exhaustion():
    pool = [Fraction(p, q) for p in range(-1, 2) for q in (1,)]
    with pytest.raises(SamplerExhausted):
        sample_rational(SeededSampler(0), excluded=pool, height=1, max_tries=50)


def test_zero_denominator_is_zero_division():
    assert issubclass(ZeroDenominator, ZeroDivisionError)


def test_exact_divide_without_gmpy2(monkeypatch):
    from cubicdyn.numeric import laurent

    monkeypatch.setattr(laurent, "_mpq", None)
    num = (u + Fraction(1, 3) * v) * (v * v - 2 * u + 5)
    q = exact_divide(num, v * v - 2 * u + 5)
    assert q == u + Fraction(1, 3) * v
    assert all(type(c) is Fraction for _, c in q.items())
    with pytest.raises(DivisionFailure):
        exact_divide(v + 3, v + 2)
