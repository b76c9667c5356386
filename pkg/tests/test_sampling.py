from collections import Counter

import numpy as np
import pytest
import scipy.stats

from embtrees import oracle as oc
from embtrees import sampling as sp

DRAWS = 100_000


def _chi2_uniform(counter, total_classes, draws):
    observed = list(counter.values()) + [0] * (total_classes - len(counter))
    expected = draws / total_classes
    stat = sum((o - expected) ** 2 / expected for o in observed)
    return scipy.stats.chi2.sf(stat, total_classes - 1)


@pytest.mark.slow
def test_pm1_uniform_over_labelled_trees():
    total = oc.enumerate_stats("pm1", 2).total
    c = Counter()
    for rep in range(DRAWS):
        labels = sp.sample_labels("pm1", 2, seed=101, replicate=rep)
        # n = 2: (shape, labels) is determined by the label multiset plus
        # the preorder label sequence
        c[tuple(labels)] += 1
    assert len(c) == total
    assert _chi2_uniform(c, total, DRAWS) > 1e-3


@pytest.mark.slow
def test_binary_uniform_over_shapes():
    total = oc.enumerate_stats("binary", 3).total  # 5 shapes
    c = Counter()
    for rep in range(DRAWS // 2):
        t = sp.sample_tree("binary", 3, seed=55, replicate=rep)
        c[(tuple(t.parents), tuple(t.labels))] += 1
    assert len(c) == total
    assert _chi2_uniform(c, total, DRAWS // 2) > 1e-3


def test_zpm1_uniform_tiny():
    c = Counter()
    for rep in range(9000):
        labels = sp.sample_labels("zpm1", 1, seed=9, replicate=rep)
        c[tuple(labels)] += 1
    assert len(c) == 3
    assert _chi2_uniform(c, 3, 9000) > 1e-3


def test_dyck_path_validity():
    rng = sp._rng(3, 0)
    for n in (1, 2, 5, 40):
        steps = sp._dyck_steps(rng, n)
        walk = np.cumsum(steps)
        assert len(steps) == 2 * n
        assert walk[-1] == 0 and walk.min() >= 0


def test_tree_invariants():
    for fam in ("pm1", "zpm1", "binary"):
        for rep in range(20):
            sp.sample_tree(fam, 15, seed=4, replicate=rep).check()


def test_binary_labels_match_structure():
    for rep in range(20):
        t = sp.sample_tree("binary", 12, seed=8, replicate=rep)
        k = sp.sample_labels("binary", 12, seed=8, replicate=rep)
        assert sorted(t.labels) == sorted(k)


def test_stats_on_known_trees():
    # a two-edge path with increments +1, +1
    path = sp.LabelledTree("pm1", np.array([-1, 0, 1]), np.array([0, 1, 2]))
    st = sp.tree_stats(path)
    assert st.max_label == 2
    assert st.counts == {0: 1, 1: 1, 2: 1}
    assert st.tail(1) == 2 and st.occupation(2) == 1
    # binary left spine: labels 0, -1, -2, -3
    spine = sp.LabelledTree("binary", np.array([-1, 0, 1, 2]),
                            np.array([0, -1, -2, -3])).check()
    st = sp.tree_stats(spine)
    assert st.max_label == 0 and st.counts == {0: 1, -1: 1, -2: 1, -3: 1}


def test_node_totals():
    for rep in range(10):
        labels = sp.sample_labels("pm1", 30, seed=2, replicate=rep)
        assert len(labels) == 31  # n+1 nodes
        labels = sp.sample_labels("binary", 30, seed=2, replicate=rep)
        assert len(labels) == 30


def test_determinism_bytewise():
    cfg = sp.ExperimentConfig("zpm1", 200, 30, seed=77,
                              observables=("max", "occ0", "tail0"))
    a = sp.run_experiment(cfg)
    b = sp.run_experiment(cfg)
    assert a == b


def test_replicate_streams_are_stable():
    one = sp.sample_labels("pm1", 100, seed=5, replicate=17)
    again = sp.sample_labels("pm1", 100, seed=5, replicate=17)
    assert np.array_equal(one, again)
    other = sp.sample_labels("pm1", 100, seed=5, replicate=18)
    assert not np.array_equal(one, other)


def test_ks_statistic_contract():
    m = 200
    qs = [(i - 0.5) / m for i in range(1, m + 1)]
    assert sp.ks_statistic(qs, lambda x: x) == pytest.approx(0.5 / m)
    assert sp.ks_statistic([0.5], lambda x: x) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        sp.ks_statistic([], lambda x: x)
    rng = np.random.default_rng(0)
    assert sp.ks_statistic(rng.random(10_000), lambda x: x) < 0.02


def test_ks_two_sample():
    rng = np.random.default_rng(1)
    a, b = rng.random(5000), rng.random(5000)
    assert sp.ks_two_sample(a, b) < 0.05
    assert sp.ks_two_sample(a, a) == 0.0


def test_observable_tokens():
    assert sp._parse_obs("max", 16) == ("max", None)
    assert sp._parse_obs("occ0", 16) == ("occ0", 0)
    assert sp._parse_obs("tail-3", 16) == ("tail-3", -3)
    assert sp._parse_obs("occ@1.0", 16) == ("occ@1.0", 2)   # floor(16^(1/4))
    assert sp._parse_obs("tail@1.1", 16) == ("tail@1.1", 3)  # ceil(2.2)
    with pytest.raises(ValueError):
        sp._parse_obs("median", 16)


def test_config_json_roundtrip():
    cfg = sp.ExperimentConfig("binary", 64, 3, 11, ("max", "tail0"), (0.5,))
    assert sp.ExperimentConfig.from_json(cfg.to_json()) == cfg


def test_histogram_shape():
    cfg = sp.ExperimentConfig("pm1", 256, 8, seed=3)
    centers, mass = sp.occupation_histogram(cfg, bins=21)
    assert len(centers) == 21 == len(mass)
    assert mass.sum() > 0.5  # most of the measure is inside the window
