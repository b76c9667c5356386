# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the hot loops.

Three families of kernels live here:

* dense convolutions over Python objects (exact ints / rationals), used by
  the truncated-series and Laurent-polynomial arithmetic;
* label walks for uniformly sampled plane trees (Dyck encoding);
* leaf-insertion growth of uniform binary trees plus their natural labels.

The pure-Python equivalents are in ``_fallback.py``; ``kernels.py`` picks
whichever is importable.
"""

import numpy as np

COMPILED = True


def poly_mul(list a, list b):
    """Full convolution of two dense coefficient runs (Python objects)."""
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef list out = [0] * (na + nb - 1)
    cdef Py_ssize_t i, j, k
    cdef object ai, bj
    for i in range(na):
        ai = a[i]
        if not ai:
            continue
        for j in range(nb):
            bj = b[j]
            if not bj:
                continue
            k = i + j
            out[k] = out[k] + ai * bj
    return out


def poly_mul_trunc(list a, list b, Py_ssize_t nmax):
    """Convolution keeping only indices <= nmax."""
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t top = na + nb - 1
    if top > nmax + 1:
        top = nmax + 1
    if na == 0 or nb == 0 or top <= 0:
        return []
    cdef list out = [0] * top
    cdef Py_ssize_t i, j, jmax, k
    cdef object ai, bj
    for i in range(na):
        if i >= top:
            break
        ai = a[i]
        if not ai:
            continue
        jmax = top - i
        if jmax > nb:
            jmax = nb
        for j in range(jmax):
            bj = b[j]
            if not bj:
                continue
            k = i + j
            out[k] = out[k] + ai * bj
    return out


def conv_at(list a, list b, Py_ssize_t n):
    """Single convolution coefficient sum(a[i]*b[n-i]) over valid i."""
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t lo = n - (nb - 1)
    if lo < 0:
        lo = 0
    cdef Py_ssize_t hi = n
    if hi > na - 1:
        hi = na - 1
    cdef object acc = 0
    cdef object ai, bj
    cdef Py_ssize_t i
    for i in range(lo, hi + 1):
        ai = a[i]
        if not ai:
            continue
        bj = b[n - i]
        if not bj:
            continue
        acc = acc + ai * bj
    return acc


def uconv_at(list aoffs, list acs, list boffs, list bcs, Py_ssize_t n):
    """Order-n coefficient of a Cauchy product of Laurent-coefficient series.

    The two series are given as parallel lists: ``offs[k]`` is the leading
    u-exponent of the order-k coefficient and ``cs[k]`` its dense run
    (empty run = zero). Returns ``(off, run)`` un-trimmed.
    """
    cdef Py_ssize_t na = len(acs), nb = len(bcs)
    cdef Py_ssize_t lo_i = n - (nb - 1)
    if lo_i < 0:
        lo_i = 0
    cdef Py_ssize_t hi_i = n
    if hi_i > na - 1:
        hi_i = na - 1
    cdef Py_ssize_t i, p, q, la, lb, base
    cdef long lo = 0, hi = 0, o, top
    cdef bint seen = False
    cdef list ca, cb
    for i in range(lo_i, hi_i + 1):
        ca = <list> acs[i]
        cb = <list> bcs[n - i]
        if len(ca) == 0 or len(cb) == 0:
            continue
        o = <long> aoffs[i] + <long> boffs[n - i]
        top = o + len(ca) + len(cb) - 2
        if not seen:
            lo = o
            hi = top
            seen = True
        else:
            if o < lo:
                lo = o
            if top > hi:
                hi = top
    if not seen:
        return 0, []
    cdef list out = [0] * (hi - lo + 1)
    cdef object av, bv
    for i in range(lo_i, hi_i + 1):
        ca = <list> acs[i]
        cb = <list> bcs[n - i]
        la = len(ca)
        lb = len(cb)
        if la == 0 or lb == 0:
            continue
        base = (<long> aoffs[i] + <long> boffs[n - i]) - lo
        for p in range(la):
            av = ca[p]
            if not av:
                continue
            for q in range(lb):
                bv = cb[q]
                if not bv:
                    continue
                out[base + p + q] = out[base + p + q] + av * bv
    return lo, out


def plane_walk_labels(const signed char[::1] steps, const long long[::1] incs):
    """Node labels of the plane tree encoded by a Dyck walk.

    ``steps`` is the 2n-step walk (+1 descend into a new edge, -1 ascend);
    ``incs[k]`` is the label increment of the k-th edge in walk order.
    Returns the n+1 node labels in discovery (preorder) order, root first.
    """
    cdef Py_ssize_t m = steps.shape[0]
    cdef Py_ssize_t n = m // 2
    labels_arr = np.empty(n + 1, dtype=np.int64)
    stack_arr = np.empty(n + 2, dtype=np.int64)
    cdef long long[::1] labels = labels_arr
    cdef long long[::1] stack = stack_arr
    cdef Py_ssize_t k, sp = 0, nd = 0
    cdef long long cur
    stack[0] = 0
    labels[0] = 0
    with nogil:
        for k in range(m):
            if steps[k] == 1:
                cur = stack[sp] + incs[nd]
                nd += 1
                sp += 1
                stack[sp] = cur
                labels[nd] = cur
            else:
                sp -= 1
    return labels_arr


def remy_labels(const unsigned long long[::1] choices, Py_ssize_t n):
    """Natural labels of a uniform binary tree grown by leaf insertion.

    ``choices[k-1]`` is a uniform draw from {0, ..., 4k-3} encoding the
    (vertex, side) pair used at growth step k. Returns the n node labels
    (internal vertices of the grown full tree) in preorder.
    """
    cdef Py_ssize_t nv_total = 2 * n + 1
    left_arr = np.full(nv_total, -1, dtype=np.int64)
    right_arr = np.full(nv_total, -1, dtype=np.int64)
    parent_arr = np.full(nv_total, -1, dtype=np.int64)
    side_arr = np.zeros(nv_total, dtype=np.int8)
    internal_arr = np.zeros(nv_total, dtype=np.int8)
    labels_arr = np.empty(n, dtype=np.int64)
    stack_v_arr = np.empty(n + 1, dtype=np.int64)
    stack_l_arr = np.empty(n + 1, dtype=np.int64)
    cdef long long[::1] left = left_arr
    cdef long long[::1] right = right_arr
    cdef long long[::1] parent = parent_arr
    cdef signed char[::1] side = side_arr
    cdef signed char[::1] internal = internal_arr
    cdef long long[::1] labels = labels_arr
    cdef long long[::1] stack_v = stack_v_arr
    cdef long long[::1] stack_l = stack_l_arr
    cdef Py_ssize_t k, nv = 1, cnt = 0, sp
    cdef long long root = 0, v, p, new_int, new_leaf, lab
    cdef unsigned long long r
    cdef int b
    with nogil:
        for k in range(1, n + 1):
            r = choices[k - 1]
            v = <long long> (r >> 1)
            b = <int> (r & 1)
            new_int = nv
            new_leaf = nv + 1
            nv += 2
            internal[new_int] = 1
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
        # preorder walk over internal vertices, label = right minus left steps
        sp = 0
        stack_v[0] = root
        stack_l[0] = 0
        while sp >= 0:
            v = stack_v[sp]
            lab = stack_l[sp]
            sp -= 1
            if internal[v] == 0:
                continue
            labels[cnt] = lab
            cnt += 1
            if right[v] >= 0:
                sp += 1
                stack_v[sp] = right[v]
                stack_l[sp] = lab + 1
            if left[v] >= 0:
                sp += 1
                stack_v[sp] = left[v]
                stack_l[sp] = lab - 1
    return labels_arr
