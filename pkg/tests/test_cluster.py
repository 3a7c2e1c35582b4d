from fractions import Fraction

import pytest

from cubicdyn.dynamics import cluster, maps
from cubicdyn.errors import ZeroDenominator
from cubicdyn.numeric import SeededSampler
from cubicdyn.surfaces import V, ParamsV, SurfacePoint, lift_to_cv, random_params_v, sample_surface

P0 = ParamsV(2, 3, 5)
X0 = lift_to_cv(1, 1, P0)


def test_values_at_worked_point():
    vals = cluster.cluster_values(X0, 0, 3)
    assert [vals[("y", k)] for k in range(4)] == [-3, 1, 1, -1]
    assert [vals[("z", k)] for k in range(3)] == [-5, -1, -3]


def test_seeds():
    assert cluster.cluster_coord(1, X0) == 1
    assert cluster.cluster_coord(2, X0) == 1
    assert cluster.cluster_coord(1, X0, "z") == 1 * 1 - 2


def test_division_free_reading_agrees():
    s = SeededSampler(21)
    for i in range(25):
        sub = s.split(i)
        p = sample_surface(V, random_params_v(sub), sub)
        for k in range(-2, 4):
            try:
                a = cluster.cluster_coord(k, p)
                b = cluster.cluster_coord_polynomial(k, p)
            except ZeroDivisionError:
                continue
            assert a == b


def test_exchange_relations_random():
    s = SeededSampler(22)
    for i in range(30):
        sub = s.split(i)
        P = random_params_v(sub)
        p = sample_surface(V, P, sub)
        try:
            vals = cluster.cluster_values(p, -3, 4)
        except ZeroDenominator:
            continue
        assert all(d == 0 for d in cluster.exchange_defects(vals, P))


def test_zero_seed_stops_with_index():
    # y1 = x1 = 0 forces a division by y1 going up
    p = lift_to_cv(0, 1, P0)
    with pytest.raises(ZeroDenominator, match="y1"):
        cluster.cluster_values(p, 1, 3)


def test_laurent_property_and_values():
    rep = cluster.cluster_sequence_laurent(P0, 6)
    assert rep.ok and len(rep.states) == 13
    by = {st.k: st for st in rep.states}
    for k in range(0, 4):
        assert cluster.laurent_value(by[k], X0) == cluster.cluster_coord(k, X0)
    assert cluster.laurent_value(by[0], X0, "z") == -5


def test_laurent_random_params():
    rep = cluster.cluster_sequence_laurent(random_params_v(SeededSampler(5)), 4)
    assert rep.ok


def test_chart_pairs_are_cluster_pairs():
    for k in (1, 2, 3):
        y, z = maps.chart_p(k, X0.x, P0)
        assert y == cluster.cluster_coord(k, X0) and z == cluster.cluster_coord(k, X0, "z")
