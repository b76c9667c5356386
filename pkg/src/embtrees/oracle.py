"""Brute-force enumeration of labelled trees for small sizes.

Every tree of a given size is visited exactly once by a depth-first walk
that maintains the label multiset incrementally, so exact joint statistics
(max label, per-label occupation, tail counts) come out without storing
trees. These tables are the ground truth against which every series
coefficient is validated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .families import BINARY, get_family


@dataclass
class StatTable:
    """Exact joint statistics of all size-n trees of one family.

    ``m_dist`` maps the maximum label to a tree count; ``x_dist[j]`` and
    ``xplus_dist[j]`` map observed values of X_n(j) and X_n^+(j) to tree
    counts, for j in the window [-n, n] (labels cannot leave it).
    """

    family: str
    n: int
    total: int = 0
    m_dist: dict = field(default_factory=dict)
    x_dist: dict = field(default_factory=dict)
    xplus_dist: dict = field(default_factory=dict)

    def window(self):
        return range(-self.n, self.n + 1)

    def max_moment(self, k: int) -> Fraction:
        """E(M_n^k) over the uniform distribution, exactly."""
        return Fraction(sum(m ** k * c for m, c in self.m_dist.items()), self.total)

    def count_max_at_most(self, j: int) -> int:
        return sum(c for m, c in self.m_dist.items() if m <= j)

    def to_json(self) -> dict:
        pack = lambda d: {str(k): v for k, v in sorted(d.items())}
        return {
            "family": self.family,
            "n": self.n,
            "total": self.total,
            "m_dist": pack(self.m_dist),
            "x_dist": {str(j): pack(d) for j, d in sorted(self.x_dist.items())},
            "xplus_dist": {str(j): pack(d) for j, d in sorted(self.xplus_dist.items())},
        }

    @staticmethod
    def from_json(obj) -> "StatTable":
        unpack = lambda d: {int(k): v for k, v in d.items()}
        return StatTable(
            family=obj["family"],
            n=obj["n"],
            total=obj["total"],
            m_dist=unpack(obj["m_dist"]),
            x_dist={int(j): unpack(d) for j, d in obj["x_dist"].items()},
            xplus_dist={int(j): unpack(d) for j, d in obj["xplus_dist"].items()},
        )

    def dump(self, fh):
        json.dump(self.to_json(), fh, indent=1, sort_keys=True)


class SizeAboveCap(ValueError):
    pass


def enumerate_stats(family, n: int) -> StatTable:
    """Visit every size-n labelled tree of the family once; exact statistics."""
    fam = get_family(family)
    if n < 1:
        raise ValueError("enumeration starts at size 1")
    if n > fam.oracle_cap:
        raise SizeAboveCap(f"{fam.name} enumeration capped at {fam.oracle_cap}")

    table = StatTable(fam.name, n)
    window = list(table.window())
    xd = {j: {} for j in window}
    xpd = {j: {} for j in window}
    md = {}
    nodes = fam.nodes(n)

    def record(counts):
        table.total += 1
        m = max(counts)
        md[m] = md.get(m, 0) + 1
        assert sum(counts.values()) == nodes
        acc = 0
        for j in reversed(window):
            x = counts.get(j, 0)
            d = xd[j]
            d[x] = d.get(x, 0) + 1
            acc += x
            d = xpd[j]
            d[acc] = d.get(acc, 0) + 1

    if fam.name == BINARY:
        _walk_binary(n, record)
    else:
        _walk_plane(fam, n, record)

    table.m_dist, table.x_dist, table.xplus_dist = md, xd, xpd
    assert table.total == fam.total_count(n)
    return table


def _walk_plane(fam, n, record):
    """DFS over (shape, increments) jointly; a tree is recorded the moment
    its last edge is placed (the remaining walk is forced and adds nothing)."""
    incs = fam.increments
    parity = fam.name == "pm1"
    counts = {0: 1}
    stack = [0]

    def walk(edges_left):
        cur = stack[-1]
        for d in incs:
            lab = cur + d
            if parity and (lab + len(stack)) % 2:
                raise AssertionError("label parity broken")
            counts[lab] = counts.get(lab, 0) + 1
            if edges_left == 1:
                record(counts)
            else:
                stack.append(lab)
                walk(edges_left - 1)
                stack.pop()
            c = counts[lab] - 1
            if c:
                counts[lab] = c
            else:
                del counts[lab]
        if len(stack) > 1:
            top = stack.pop()
            walk(edges_left)
            stack.append(top)

    walk(n)


def _walk_binary(n, record):
    """DFS over preorder slot decisions; slots carry the natural label."""
    counts = {}
    slots = [0]

    def walk(nodes_left):
        lab = slots.pop()
        if slots:
            walk(nodes_left)  # leave this slot empty
        counts[lab] = counts.get(lab, 0) + 1
        if nodes_left == 1:
            record(counts)
        else:
            slots.append(lab + 1)
            slots.append(lab - 1)
            walk(nodes_left - 1)
            slots.pop()
            slots.pop()
        c = counts[lab] - 1
        if c:
            counts[lab] = c
        else:
            del counts[lab]
        slots.append(lab)

    walk(n)


def compare_series(table: StatTable, order: int | None = None) -> list:
    """Coefficient-exact comparison of a StatTable against the series.

    Checks [t^n]T_j against the number of trees with max label <= j,
    and the u-polynomials [t^n]S_j, [t^n]R_j against the exact X_n(j) and
    X_n^+(j) distributions. Returns a list of mismatch descriptions
    (expected empty); mismatches are data, not exceptions.
    """
    from .families import computation, t_bounded
    from .rings import ULaurent

    fam = get_family(table.family)
    n = table.n
    N = order if order is not None else n
    if N < n:
        raise ValueError("series order below the table size")
    comp = computation(fam.name, N)
    report = []

    for j in range(-1, n + 1):
        want = table.count_max_at_most(j)
        got = t_bounded(fam, j, N, "product").coeff(n)
        if got != want:
            report.append(f"T_{j}: [t^{n}] = {got}, enumeration {want}")

    s_chain = comp.chain("S")
    r_chain = comp.chain("R")
    for j in table.window():
        want = ULaurent.from_pairs((v, c) for v, c in table.x_dist[j].items())
        got = s_chain[j].coeff(n)
        if got != want:
            report.append(f"S_{j}: [t^{n}] = {got!r}, enumeration {want!r}")
        want = ULaurent.from_pairs((v, c) for v, c in table.xplus_dist[j].items())
        got = r_chain[j].coeff(n)
        if got != want:
            report.append(f"R_{j}: [t^{n}] = {got!r}, enumeration {want!r}")
    return report
