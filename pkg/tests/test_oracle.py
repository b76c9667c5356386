import json
from fractions import Fraction

import pytest

from embtrees import oracle as oc
from embtrees.families import get_family


def test_pm1_tiny_sizes():
    t1 = oc.enumerate_stats("pm1", 1)
    assert t1.total == 2
    assert t1.m_dist == {0: 1, 1: 1}
    t2 = oc.enumerate_stats("pm1", 2)
    assert t2.total == 8
    assert t2.m_dist == {0: 3, 1: 4, 2: 1}
    assert t2.count_max_at_most(0) == 3
    assert t2.max_moment(1) == Fraction(3, 4)


def test_binary_catalan_counts():
    for n in (1, 2, 3, 5):
        assert oc.enumerate_stats("binary", n).total == \
            get_family("binary").total_count(n)
    assert oc.enumerate_stats("binary", 3).total == 5


def test_zpm1_counts():
    assert oc.enumerate_stats("zpm1", 3).total == 27 * 5


def test_tail_consistency():
    t = oc.enumerate_stats("pm1", 3)
    # X^+(-n) counts every node in every tree
    nodes = get_family("pm1").nodes(3)
    assert t.xplus_dist[-3] == {nodes: t.total}
    # X^+(j) below the global max must be positive for the max-attaining trees
    assert 0 not in t.xplus_dist[0] or t.xplus_dist[0][0] == 0


@pytest.mark.parametrize("fam,nmax", [("pm1", 5), ("zpm1", 4), ("binary", 8)])
def test_series_match(fam, nmax):
    for n in range(1, nmax + 1):
        assert oc.compare_series(oc.enumerate_stats(fam, n)) == []


def test_compare_with_larger_order():
    table = oc.enumerate_stats("pm1", 3)
    assert oc.compare_series(table, order=6) == []
    with pytest.raises(ValueError):
        oc.compare_series(table, order=2)


def test_cap_enforced():
    with pytest.raises(oc.SizeAboveCap):
        oc.enumerate_stats("pm1", 9)
    with pytest.raises(oc.SizeAboveCap):
        oc.enumerate_stats("binary", 15)
    with pytest.raises(ValueError):
        oc.enumerate_stats("pm1", 0)


def test_json_roundtrip():
    t = oc.enumerate_stats("zpm1", 3)
    back = oc.StatTable.from_json(json.loads(json.dumps(t.to_json())))
    assert back == t
