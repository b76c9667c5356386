"""Pure-Python/numpy twins of the compiled kernels in ``_speedups.pyx``.

Same contracts, no compilation required. The plane-tree walk is vectorized
with a per-depth first-return matching; the binary-tree growth is a plain
loop (inherently sequential), so it is the slowest fallback by far.
"""

from __future__ import annotations

import numpy as np

COMPILED = False


def poly_mul(a, b):
    na, nb = len(a), len(b)
    if na == 0 or nb == 0:
        return []
    out = [0] * (na + nb - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


def poly_mul_trunc(a, b, nmax):
    na, nb = len(a), len(b)
    top = min(na + nb - 1, nmax + 1)
    if na == 0 or nb == 0 or top <= 0:
        return []
    out = [0] * top
    for i, ai in enumerate(a):
        if i >= top:
            break
        if not ai:
            continue
        for j in range(min(nb, top - i)):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def conv_at(a, b, n):
    na, nb = len(a), len(b)
    acc = 0
    for i in range(max(0, n - nb + 1), min(n, na - 1) + 1):
        ai = a[i]
        if not ai:
            continue
        bj = b[n - i]
        if bj:
            acc += ai * bj
    return acc


def uconv_at(aoffs, acs, boffs, bcs, n):
    na, nb = len(acs), len(bcs)
    pairs = []
    for i in range(max(0, n - nb + 1), min(n, na - 1) + 1):
        ca, cb = acs[i], bcs[n - i]
        if ca and cb:
            pairs.append((aoffs[i] + boffs[n - i], ca, cb))
    if not pairs:
        return 0, []
    lo = min(o for o, _, _ in pairs)
    hi = max(o + len(ca) + len(cb) - 2 for o, ca, cb in pairs)
    out = [0] * (hi - lo + 1)
    for o, ca, cb in pairs:
        base = o - lo
        for p, av in enumerate(ca):
            if not av:
                continue
            for q, bv in enumerate(cb):
                if bv:
                    out[base + p + q] += av * bv
    return lo, out


def plane_walk_labels(steps, incs):
    """Vectorized labels for the Dyck-encoded plane tree.

    An up-step closing an edge opened at depth d is the successor, in time
    order, of that down-step among all steps touching level d; per level the
    two kinds strictly alternate, which makes the matching a stable sort.
    """
    steps = np.asarray(steps, dtype=np.int64)
    m = steps.shape[0]
    depth_after = np.cumsum(steps)
    level = depth_after - steps  # down-step: level it opens from
    level[steps < 0] = depth_after[steps < 0]  # up-step: level it returns to
    order = np.lexsort((np.arange(m), level))
    down_pos = order[::2]
    up_pos = order[1::2]
    e = np.zeros(m, dtype=np.int64)
    downs = np.flatnonzero(steps == 1)
    e[downs] = np.asarray(incs, dtype=np.int64)
    e[up_pos] = -e[down_pos]
    walk = np.cumsum(e)
    labels = np.empty(m // 2 + 1, dtype=np.int64)
    labels[0] = 0
    labels[1:] = walk[downs]
    return labels


def remy_labels(choices, n):
    nv_total = 2 * n + 1
    left = [-1] * nv_total
    right = [-1] * nv_total
    parent = [-1] * nv_total
    side = [0] * nv_total
    internal = [False] * nv_total
    root = 0
    nv = 1
    for k in range(1, n + 1):
        r = int(choices[k - 1])
        v = r >> 1
        b = r & 1
        new_int = nv
        new_leaf = nv + 1
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
            left[new_int] = v
            side[v] = 0
            right[new_int] = new_leaf
            side[new_leaf] = 1
        else:
            right[new_int] = v
            side[v] = 1
            left[new_int] = new_leaf
            side[new_leaf] = 0
        parent[v] = new_int
        parent[new_leaf] = new_int
    labels = np.empty(n, dtype=np.int64)
    cnt = 0
    stack = [(root, 0)]
    while stack:
        v, lab = stack.pop()
        if not internal[v]:
            continue
        labels[cnt] = lab
        cnt += 1
        if right[v] >= 0:
            stack.append((right[v], lab + 1))
        if left[v] >= 0:
            stack.append((left[v], lab - 1))
    return labels
