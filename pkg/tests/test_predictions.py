import math

import pytest

from growthlab import predictions as P

INF = math.inf


def test_leaf_fraction_closed():
    assert P.leaf_fraction_closed(0, 0.5) == pytest.approx(2 - math.sqrt(2), abs=1e-12)
    assert P.leaf_fraction_closed(INF, 0.5) == 0.75
    for r in (0, 0.3, 1):
        assert P.leaf_fraction_closed(1, r) == pytest.approx(2 / 3)
    assert P.leaf_fraction_closed(-INF, 0.3) == 0.3
    assert P.leaf_fraction_closed(2, 0.5) is None
    assert P.leaf_fraction_closed(0, 1e-9) == pytest.approx(0.5, abs=1e-6)


def test_dmax_exponent_closed():
    assert P.dmax_exponent_closed(2, 1) == pytest.approx(2 / 3)
    assert P.dmax_exponent_closed(INF, 1) == 0.5
    assert P.dmax_exponent_closed(1, 0) == 0.5
    assert P.dmax_exponent_closed(1e9, 1) == pytest.approx(0.5, abs=1e-8)
    assert P.dmax_exponent_closed(0, 0.5) is None


def test_second_layer():
    assert P.second_layer_exponent_closed(2) == pytest.approx(1 / 3)
    assert P.second_layer_exponent_closed(INF) == 0.5
    for a in (1.1, 2, 3.5, 40):
        assert P.second_layer_exponent_closed(a) + P.dmax_exponent_closed(a, 1) == pytest.approx(1)
    with pytest.raises(ValueError):
        P.second_layer_exponent_closed(1)


def test_king_neighbor_law():
    assert P.king_neighbor_degree_dist(0.5, 1) == 0.5
    assert P.king_neighbor_degree_dist(0.5, 2) == 0.25
    assert P.king_neighbor_degree_dist(0.5, 3) == 0.125
    assert sum(P.king_neighbor_pmf(0.3, 200).values()) == pytest.approx(1)
    with pytest.raises(ValueError):
        P.king_neighbor_degree_dist(1.0, 1)


def test_qba_bound():
    b = P.qba_leaf_upper_bound()
    assert b == pytest.approx(12 / 19)
    assert 0.5 < b < 2 / 3


def test_table_only_available_values():
    rows = P.table([-INF, 0, 1, 2, INF], [0, 0.5, 1])
    assert all(p.value is not None for p in rows)
    keys = {(p.quantity, p.family, p.alpha, p.r) for p in rows}
    assert ("leaf_fraction", "CR", 0, 0.5) in keys
    assert ("dmax_exponent", "CR", 2, 1) in keys
    assert ("leaf_fraction", "CR", 2, 0.5) not in keys
