"""The compiled kernels and their pure twins must agree exactly."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from embtrees import _fallback, kernels
from embtrees.rings import rat

pytestmark = pytest.mark.skipif(not kernels.COMPILED,
                                reason="extension not built; twins are identical")


def test_pure_backend_env_switch():
    env = dict(os.environ, EMBTREES_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c",
         "from embtrees import kernels; print(kernels.BACKEND); "
         "from embtrees import families as fm; "
         "print(fm.t_bounded('pm1', 0, 5).c)"],
        capture_output=True, text=True, env=env)
    assert out.stdout.splitlines() == ["pure", "[1, 1, 3, 12, 56, 288]"]

ints = st.integers(-30, 30)
runs = st.lists(ints, max_size=6)


@given(runs, runs)
def test_poly_mul_matches(a, b):
    assert kernels.poly_mul(a, b) == _fallback.poly_mul(a, b)


@given(runs, runs, st.integers(0, 8))
def test_poly_mul_trunc_matches(a, b, nmax):
    assert kernels.poly_mul_trunc(a, b, nmax) == _fallback.poly_mul_trunc(a, b, nmax)


@given(runs, runs, st.integers(0, 9))
def test_conv_at_matches(a, b, n):
    assert kernels.conv_at(a, b, n) == _fallback.conv_at(a, b, n)


def test_poly_mul_with_rationals():
    a = [rat(1, 2), 3]
    b = [rat(2, 3), rat(-1, 5)]
    assert kernels.poly_mul(a, b) == _fallback.poly_mul(a, b)


series_u = st.lists(st.tuples(st.integers(-4, 4), runs), min_size=1, max_size=5)


@given(series_u, series_u, st.integers(0, 4))
def test_uconv_at_matches(a, b, n):
    if n >= len(a) + len(b) - 1:
        n = 0
    aoffs, acs = [x[0] for x in a], [list(x[1]) for x in a]
    boffs, bcs = [x[0] for x in b], [list(x[1]) for x in b]
    got = kernels.uconv_at(aoffs, acs, boffs, bcs, n)
    want = _fallback.uconv_at(aoffs, acs, boffs, bcs, n)
    # compare after trimming: offsets of all-zero runs are arbitrary
    from embtrees.rings import _trim
    assert _trim(*got) == _trim(*want)


def test_plane_walk_matches():
    rng = np.random.default_rng(5)
    for n in (1, 2, 7, 40, 500):
        for _ in range(10):
            seq = np.concatenate([np.ones(n, np.int8), -np.ones(n + 1, np.int8)])
            rng.shuffle(seq)
            pref = np.cumsum(seq)
            k = int(np.argmin(pref))
            steps = np.concatenate([seq[k + 1:], seq[:k + 1]])[:-1]
            incs = rng.choice(np.array([-1, 0, 1], np.int64), size=n)
            a = kernels.plane_walk_labels(steps, incs)
            b = _fallback.plane_walk_labels(steps, incs)
            assert np.array_equal(a, b)


def test_remy_matches():
    rng = np.random.default_rng(6)
    for n in (1, 2, 5, 30, 200):
        for _ in range(10):
            highs = 4 * np.arange(1, n + 1, dtype=np.uint64) - 2
            choices = rng.integers(0, highs, dtype=np.uint64)
            a = kernels.remy_labels(choices, n)
            b = _fallback.remy_labels(choices, n)
            assert np.array_equal(a, b)
