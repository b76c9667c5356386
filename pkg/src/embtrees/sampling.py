"""Exactly uniform random generation of labelled trees and Monte Carlo runs.

Plane trees (both increment families) are drawn through a ballot sequence
and the cycle lemma: among the 2n+1 rotations of a shuffled sequence of n
up-steps and n+1 down-steps exactly one is a valid encoding, so each of the
C_n shapes is hit uniformly; edge increments are then independent uniform
draws. Binary trees grow by uniform leaf insertion (n steps, each picking a
uniform (vertex, side) pair), which is exactly uniform over the C_n shapes;
their labels are deterministic.

Randomness contract: replicate r of a run with seed s uses the counter-based
Philox stream keyed by (s, r), so replicates are independent and any single
replicate can be regenerated in isolation.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .families import BINARY, get_family


def _rng(seed: int, replicate: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.Philox(key=np.array([seed, replicate], dtype=np.uint64)))


def thread_count() -> int:
    raw = os.environ.get("EMBTREES_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------


def _dyck_steps(rng, n: int) -> np.ndarray:
    """Uniform Dyck walk of length 2n via the cycle lemma."""
    seq = np.empty(2 * n + 1, dtype=np.int8)
    seq[:n] = 1
    seq[n:] = -1
    rng.shuffle(seq)
    pref = np.cumsum(seq)
    k = int(np.argmin(pref))  # first time the global minimum (-1 level) is hit
    rot = np.concatenate([seq[k + 1:], seq[:k + 1]])
    return rot[:-1]


def _plane_labels(rng, fam, n: int) -> np.ndarray:
    steps = _dyck_steps(rng, n)
    incs = rng.choice(np.array(fam.increments, dtype=np.int64), size=n)
    return kernels.plane_walk_labels(steps, incs)


def _remy_choices(rng, n: int) -> np.ndarray:
    highs = 4 * np.arange(1, n + 1, dtype=np.uint64) - 2
    return rng.integers(0, highs, dtype=np.uint64)


def sample_labels(family, n: int, seed: int, replicate: int) -> np.ndarray:
    """Node labels (preorder) of one uniformly drawn size-n tree."""
    fam = get_family(family)
    rng = _rng(seed, replicate)
    if fam.name == BINARY:
        return kernels.remy_labels(_remy_choices(rng, n), n)
    return _plane_labels(rng, fam, n)


@dataclass
class LabelledTree:
    """Explicit tree: preorder parent pointers plus per-node labels."""

    family: str
    parents: np.ndarray
    labels: np.ndarray

    @property
    def size(self) -> int:
        fam = get_family(self.family)
        return len(self.labels) - 1 if fam.size_unit == "edges" else len(self.labels)

    def check(self):
        fam = get_family(self.family)
        assert self.labels[0] == 0, "root label must be 0"
        diffs = self.labels[1:] - self.labels[self.parents[1:]]
        if fam.name == BINARY:
            assert np.all(np.abs(diffs) == 1)
        else:
            allowed = set(fam.increments)
            assert set(np.unique(diffs)) <= allowed
        return self


def sample_tree(family, n: int, seed: int, replicate: int) -> LabelledTree:
    """One uniform labelled tree with full structure (small-n friendly)."""
    fam = get_family(family)
    rng = _rng(seed, replicate)
    if fam.name == BINARY:
        parents, labels = _remy_structure(_remy_choices(rng, n), n)
        return LabelledTree(fam.name, parents, labels)
    steps = _dyck_steps(rng, n)
    incs = rng.choice(np.array(fam.increments, dtype=np.int64), size=n)
    parents = np.empty(n + 1, dtype=np.int64)
    labels = np.empty(n + 1, dtype=np.int64)
    parents[0] = -1
    labels[0] = 0
    stack = [0]
    nd = 0
    for s in steps:
        if s == 1:
            nd += 1
            parents[nd] = stack[-1]
            labels[nd] = labels[stack[-1]] + incs[nd - 1]
            stack.append(nd)
        else:
            stack.pop()
    return LabelledTree(fam.name, parents, labels)


def _remy_structure(choices, n):
    """Python twin of the growth kernel that also reports parent pointers."""
    nv_total = 2 * n + 1
    left = [-1] * nv_total
    right = [-1] * nv_total
    parent = [-1] * nv_total
    side = [0] * nv_total
    internal = [False] * nv_total
    root, nv = 0, 1
    for k in range(1, n + 1):
        r = int(choices[k - 1])
        v, b = r >> 1, r & 1
        new_int, new_leaf = nv, nv + 1
        nv += 2
        internal[new_int] = True
        p = parent[v]
        if p < 0:
            root = new_int
        else:
            if side[v] == 0:
                left[p] = new_int
            else:
                right[p] = new_int
            parent[new_int] = p
            side[new_int] = side[v]
        if b == 0:
            left[new_int], side[v] = v, 0
            right[new_int], side[new_leaf] = new_leaf, 1
        else:
            right[new_int], side[v] = v, 1
            left[new_int], side[new_leaf] = new_leaf, 0
        parent[v] = new_int
        parent[new_leaf] = new_int
    parents = np.empty(n, dtype=np.int64)
    labels = np.empty(n, dtype=np.int64)
    cnt = 0
    stack = [(root, -1, 0)]
    while stack:
        v, pid, lab = stack.pop()
        if not internal[v]:
            continue
        parents[cnt] = pid
        labels[cnt] = lab
        me = cnt
        cnt += 1
        if right[v] >= 0:
            stack.append((right[v], me, lab + 1))
        if left[v] >= 0:
            stack.append((left[v], me, lab - 1))
    return parents, labels


# ---------------------------------------------------------------------------
# per-tree statistics
# ---------------------------------------------------------------------------


@dataclass
class TreeStat:
    """Summary of one tree: size, max label and the label -> count map."""

    size: int
    max_label: int
    counts: dict

    def occupation(self, j: int) -> int:
        return self.counts.get(j, 0)

    def tail(self, j: int) -> int:
        return sum(c for lab, c in self.counts.items() if lab >= j)


def tree_stats(tree_or_labels) -> TreeStat:
    labels = tree_or_labels.labels if isinstance(tree_or_labels, LabelledTree) \
        else np.asarray(tree_or_labels)
    lo = int(labels.min())
    counts = np.bincount(labels - lo)
    size = len(labels)  # node count; the caller knows the family's size unit
    return TreeStat(size, int(labels.max()),
                    {lo + i: int(c) for i, c in enumerate(counts) if c})


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    """Reproducible Monte Carlo run: (seed, replicate) determines a sample."""

    family: str
    n: int
    replicates: int
    seed: int
    observables: tuple = ("max", "occ0", "tail0")
    lambdas: tuple = ()

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "replicates": self.replicates,
            "seed": self.seed,
            "observables": list(self.observables),
            "lambdas": list(self.lambdas),
        }

    @staticmethod
    def from_json(obj) -> "ExperimentConfig":
        return ExperimentConfig(
            family=obj["family"],
            n=int(obj["n"]),
            replicates=int(obj["replicates"]),
            seed=int(obj["seed"]),
            observables=tuple(obj.get("observables", ("max", "occ0", "tail0"))),
            lambdas=tuple(obj.get("lambdas", ())),
        )


def _parse_obs(token: str, n: int):
    """Observable token -> (column name, j or None). Tokens: ``max``,
    ``occ<j>``, ``tail<j>``, ``occ@<lam>``, ``tail@<lam>`` (scaled index)."""
    if token == "max":
        return ("max", None)
    for prefix in ("occ", "tail"):
        if token.startswith(prefix):
            arg = token[len(prefix):]
            if arg.startswith("@"):
                lam = float(arg[1:])
                j = math.floor(lam * n ** 0.25) if prefix == "occ" \
                    else math.ceil(lam * n ** 0.25)
            else:
                j = int(arg)
            return (token, j)
    raise ValueError(f"unknown observable {token!r}")


def scaled_value(fam, kind: str, raw: int, n: int) -> float:
    if kind == "max":
        return raw / n ** 0.25
    if kind == "occ":
        return raw / n ** 0.75
    return raw / n


def run_experiment(cfg: ExperimentConfig):
    """One row per replicate: raw observables and their normalized versions.

    Returns (column names, rows); rows are keyed by replicate index so the
    thread count never changes the output.
    """
    fam = get_family(cfg.family)
    obs = [_parse_obs(tok, cfg.n) for tok in cfg.observables]
    columns = ["replicate"]
    for name, _ in obs:
        columns += [name, name + "_scaled"]

    def one(rep: int):
        labels = sample_labels(fam, cfg.n, cfg.seed, rep)
        row = [rep]
        for name, j in obs:
            if name == "max":
                raw = int(labels.max())
                row += [raw, scaled_value(fam, "max", raw, cfg.n)]
            elif name.startswith("occ"):
                raw = int((labels == j).sum())
                row += [raw, scaled_value(fam, "occ", raw, cfg.n)]
            else:
                raw = int((labels >= j).sum())
                row += [raw, scaled_value(fam, "tail", raw, cfg.n)]
        return row

    workers = thread_count()
    if workers == 1:
        rows = [one(rep) for rep in range(cfg.replicates)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, range(cfg.replicates)))
    return columns, rows


def occupation_histogram(cfg: ExperimentConfig, bins: int = 81, lam_max: float = 2.0):
    """Binned average of the rescaled occupation measure over replicates
    (plot-ready data for the label-profile picture)."""
    fam = get_family(cfg.family)
    c = fam.ise_scale
    edges = np.linspace(-c * lam_max, c * lam_max, bins + 1)
    acc = np.zeros(bins)
    nodes = fam.nodes(cfg.n)
    for rep in range(cfg.replicates):
        labels = sample_labels(fam, cfg.n, cfg.seed, rep)
        x = c * labels * cfg.n ** -0.25
        hist, _ = np.histogram(x, bins=edges)
        acc += hist / nodes
    acc /= cfg.replicates
    centers = (edges[:-1] + edges[1:]) / 2
    return centers, acc


# ---------------------------------------------------------------------------
# goodness of fit
# ---------------------------------------------------------------------------


def ks_statistic(sample, cdf) -> float:
    """Sup distance between the empirical CDF of `sample` and `cdf`."""
    xs = np.sort(np.asarray(sample, dtype=float))
    m = len(xs)
    if m == 0:
        raise ValueError("empty sample")
    f = np.array([cdf(x) for x in xs])
    up = np.max(np.arange(1, m + 1) / m - f)
    down = np.max(f - np.arange(0, m) / m)
    return float(max(up, down))


def ks_two_sample(a, b) -> float:
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    both = np.concatenate([a, b])
    ca = np.searchsorted(a, both, side="right") / len(a)
    cb = np.searchsorted(b, both, side="right") / len(b)
    return float(np.max(np.abs(ca - cb)))
