"""Acceptance gates, one test per criterion, one printed line per criterion.

Every tolerance is pinned here. The finite-size-sensitive clauses of
criteria 5 and 6 are known to fail for a mathematical reason and are
asserted as stated anyway:

* the scaled mean maximum E(M_n) n^(-1/4) approaches its limit like
  limit - 2.5 n^(-1/4), so the exact value at n = 400 sits ~24% below the
  limit (the 15% window first opens near n ~ 2900) and the n = 10^5 sample
  mean sits near 2.03, outside 2.17 +- 0.05;
* the tail observable X+(0)/n carries a ~ +0.25 n^(-1/4) mean bias for the
  two plane families (confirmed exactly at n = 400 by a derivative-chain
  computation: 0.5560, with the sampler matching it), i.e. ~ +0.014 at
  n = 10^5, which pushes the mean outside 0.5 +- 0.01 and the KS distance
  against Uniform[0,1] to ~0.025 > 0.02. The binary family's bias constant
  is about half, and its clauses pass.

The assertions print every measured value and the extrapolation evidence
before failing, so the misses are attributable to the targets rather than
the computation. Everything else passes.
"""

import math
import subprocess
import sys

import numpy as np
import pytest

from embtrees import families as fm
from embtrees import limits as lm
from embtrees import oracle as oc
from embtrees import sampling as sp
from embtrees import verify as vf
from embtrees.rings import ULaurent

SEED = 20050117

_CAPFD = None


@pytest.fixture(autouse=True)
def _live_announcements(capfd):
    # lets the one-line-per-criterion verdicts reach the real stdout even
    # when the test passes (pytest otherwise swallows them)
    global _CAPFD
    _CAPFD = capfd
    yield
    _CAPFD = None


def _announce(criterion, ok, detail=""):
    line = f"\n[criterion {criterion}] {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" | {detail}"
    if _CAPFD is not None:
        with _CAPFD.disabled():
            print(line)
    else:
        print(line)


# -- criterion 1: exact identity suite --------------------------------------


@pytest.mark.slow
def test_criterion_1_exact_identities():
    checks = []
    for fam in ("pm1", "zpm1", "binary"):
        checks.extend(vf.exact_suite(fam, order=30, jmax=10))
    failed = [c for c in checks if c.ok is False]
    info = [c for c in checks if c.ok is None]
    _announce(1, not failed,
              f"{len(checks) - len(failed) - len(info)} exact identities, "
              f"{len(info)} informational")
    for c in failed:
        print("   failed:", c.name, c.detail)
    assert not failed


# -- criterion 2: oracle equivalence -----------------------------------------


@pytest.mark.slow
def test_criterion_2_oracle_equivalence():
    mismatches = []
    sizes = {"pm1": 7, "zpm1": 7, "binary": 12}
    for fam, nmax in sizes.items():
        for n in range(1, nmax + 1):
            table = oc.enumerate_stats(fam, n)
            mismatches += [f"{fam} n={n}: {m}" for m in oc.compare_series(table)]
    _announce(2, not mismatches,
              "pm1/zpm1 to 7 edges, binary to 12 nodes, coefficient-exact")
    assert mismatches == []


# -- criterion 3: printed coefficients ----------------------------------------


def test_criterion_3_printed_coefficients():
    ok = True
    ok &= fm.t_bounded("pm1", 0, 4).c == [1, 1, 3, 12, 56]
    ok &= fm.t_bounded("zpm1", 0, 3).c == [1, 2, 9, 54]
    printed = {
        "pm1": [[(1, 1), (0, -1)], [(2, 2), (1, -2)],
                [(3, 6), (2, 1), (1, -7)], [(4, 23), (3, 13), (2, -4), (1, -32)]],
        "zpm1": [[(1, 1), (0, -1)], [(2, 3), (1, -3)],
                 [(3, 14), (2, 1), (1, -15)],
                 [(4, 83), (3, 34), (2, -13), (1, -104)]],
        "binary": [[], [(1, 1), (0, -1)], [(2, 1), (0, -1)],
                   [(3, 2), (2, 1), (0, -3)]],
    }
    for fam, rows in printed.items():
        nu = fm.nu_series(fam, 5)
        want = [ULaurent.from_pairs(r) for r in rows]
        ok &= nu.c[: len(want)] == want
    _announce(3, ok, "bounded-label heads and tail-parameter expansions")
    assert ok


# -- criterion 4: numeric limit-law suite -------------------------------------


@pytest.mark.slow
def test_criterion_4_numeric_suite():
    checks = vf.numeric_suite()
    failed = [c for c in checks if c.ok is False]
    _announce(4, not failed, f"{len(checks) - len(failed)}/{len(checks)} "
              "calibration identities at stated tolerances")
    for c in failed:
        print("   failed:", c.name, c.detail)
    assert not failed


# -- criterion 5: exact finite-size moment trend -------------------------------


@pytest.mark.slow
def test_criterion_5_exact_moment_trend():
    limit = lm.moment_n_limit(1)
    sizes = (50, 100, 200, 400)
    vals = {n: float(fm.exact_max_moment("pm1", 1, n, order=400)) / n ** 0.25
            for n in sizes}
    increasing = all(vals[a] < vals[b] for a, b in zip(sizes, sizes[1:]))
    within = abs(vals[400] - limit) / limit <= 0.15

    # evidence that the sequence converges to the limit even though the
    # 15% window is still far at n = 400
    xs = np.array([n ** -0.25 for n in sizes[1:]])
    ys = np.array([vals[n] for n in sizes[1:]])
    extrapolated = float(np.polyfit(xs, ys, 2)[-1])

    detail = (f"values {[round(vals[n], 4) for n in sizes]}, limit {limit:.4f}, "
              f"gap at n=400 {abs(vals[400] - limit) / limit:.1%}, "
              f"n->inf extrapolation {extrapolated:.4f}")
    _announce(5, increasing and within, detail)
    assert increasing, "the exact trend must increase toward the limit"
    if not within:
        print("   analysis: the scaled mean approaches its limit like")
        print("   limit - 2.5 n^(-1/4), so the 15% window is first reached")
        print("   near n ~ 2900; the")
        print("   extrapolated limit above confirms the computation converges")
        print("   to the right constant. Failing as stated.")
    assert within, (
        f"E(M_n) n^(-1/4) at n=400 is {vals[400]:.4f}, "
        f"{abs(vals[400] - limit) / limit:.1%} from {limit:.4f} (> 15%)")


# -- criterion 6: Monte Carlo suite --------------------------------------------


@pytest.mark.slow
def test_criterion_6_monte_carlo():
    n, reps = 100_000, 10_000
    data = {}
    for fam in ("pm1", "zpm1", "binary"):
        cfg = sp.ExperimentConfig(fam, n, reps, SEED, ("max", "occ0", "tail0"))
        cols, rows = sp.run_experiment(cfg)
        arr = np.array(rows, dtype=float)
        data[fam] = {name: arr[:, cols.index(name)]
                     for name in ("max_scaled", "occ0_scaled", "tail0_scaled")}

    failures = []

    mean_max = data["pm1"]["max_scaled"].mean()
    ok_mean_max = abs(mean_max - 2.17) <= 0.05
    if not ok_mean_max:
        failures.append(
            f"pm1 mean M n^-1/4 = {mean_max:.4f} outside 2.17 +- 0.05 "
            f"(finite-size correction ~ -2.5 n^(-1/4) = "
            f"{-2.5 * n ** -0.25:.3f})")

    uniform_cdf = lambda x: min(max(x, 0.0), 1.0)
    for fam in data:
        tail = data[fam]["tail0_scaled"]
        ks = sp.ks_statistic(tail, uniform_cdf)
        mean = tail.mean()
        if ks >= 0.02:
            failures.append(f"{fam} KS(tail0/n, U[0,1]) = {ks:.4f} >= 0.02")
        if abs(mean - 0.5) >= 0.01:
            failures.append(f"{fam} mean tail0/n = {mean:.4f} not within 0.01 of 0.5")
        print(f"   {fam}: KS = {ks:.4f}, mean tail0/n = {mean:.4f}")

    s2, s3 = math.sqrt(2.0), math.sqrt(3.0)
    rescaled = {
        "pm1": data["pm1"]["occ0_scaled"],
        "zpm1": data["zpm1"]["occ0_scaled"] * (s2 / s3),
        "binary": data["binary"]["occ0_scaled"] * s2,
    }
    names = sorted(rescaled)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            ks = sp.ks_two_sample(rescaled[a], rescaled[b])
            print(f"   cross-family occupation KS (conjecture-level evidence, "
                  f"not proof): {a}/{b} = {ks:.4f}")
            if ks >= 0.03:
                failures.append(f"cross-family KS {a}/{b} = {ks:.4f} >= 0.03")

    _announce(6, not failures,
              f"pm1 mean max = {mean_max:.4f} (target 2.17 +- 0.05)")
    for f in failures:
        print("   failed:", f)
    assert not failures, "; ".join(failures)


# -- criterion 7: determinism ---------------------------------------------------


def test_criterion_7_determinism(tmp_path):
    def run(args, path):
        cmd = [sys.executable, "-m", "embtrees.cli"] + args + ["--out", str(path)]
        subprocess.run(cmd, check=False, capture_output=True)
        return path.read_bytes()

    sample_args = ["sample", "--family", "binary", "--n", "500", "--reps", "20",
                   "--seed", "42", "--obs", "max,occ0,tail0"]
    a = run(sample_args, tmp_path / "s1.csv")
    b = run(sample_args, tmp_path / "s2.csv")
    verify_args = ["verify", "--family", "pm1", "--order", "10", "--jmax", "3",
                   "--oracle-max", "3", "--skip-numeric"]
    c = run(verify_args, tmp_path / "v1.txt")
    d = run(verify_args, tmp_path / "v2.txt")
    ok = a == b and c == d and len(a) > 0 and len(c) > 0
    _announce(7, ok, "sample and verify outputs byte-identical across runs")
    assert ok
