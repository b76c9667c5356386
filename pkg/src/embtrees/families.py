"""Exact generating functions for the three labelled-tree families.

Every family supports three counting problems, each solved two independent
ways and cross-checked elsewhere:

* ``T_j``  — trees whose labels all stay <= j (rational coefficients),
* ``S_j``  — trees by number of nodes labelled exactly j (marker u),
* ``R_j``  — trees by number of nodes labelled j or more (marker u),

either from closed product forms in the core algebraic series Z (with the
auxiliary series mu and nu), or from the truncated infinite recurrence
systems solved order by order with closure index J = N + 2: a tree of size
<= N cannot carry a label beyond N, so all chain members coincide with
their j -> +-infinity limits past J.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import kernels
from .rings import QQ, UL, ULaurent, U_MINUS_ONE, _trim, rat
from .series import Series, solve_fixed_point

PM1 = "pm1"
ZPM1 = "zpm1"
BINARY = "binary"


@dataclass(frozen=True)
class FamilySpec:
    """Static description of one tree family."""

    name: str
    size_unit: str                  # "edges" or "nodes"
    increments: tuple | None        # edge increments; None = deterministic labels
    t_quadratic: int                # T = 1 + c t T^2
    t_exponents: tuple              # Z-power offsets (a1, a2, b1, b2) for T_j
    su_exponents: tuple             # Z-power offsets for S_j and R_j
    ise_scale: float                # constant c in the occupation-measure rescaling
    oracle_cap: int                 # largest size the exhaustive oracle accepts

    def total_count(self, n: int) -> int:
        """Number of size-n labelled trees in the family."""
        cat = math.comb(2 * n, n) // (n + 1)
        if self.name == PM1:
            return 2 ** n * cat
        if self.name == ZPM1:
            return 3 ** n * cat
        return cat

    def nodes(self, n: int) -> int:
        return n + 1 if self.size_unit == "edges" else n


FAMILIES = {
    PM1: FamilySpec(PM1, "edges", (-1, 1), 2, (1, 5, 2, 4), (0, 4, 1, 3),
                    math.sqrt(2.0), 8),
    ZPM1: FamilySpec(ZPM1, "edges", (-1, 0, 1), 3, (1, 4, 2, 3), (0, 3, 1, 2),
                     math.sqrt(3.0), 8),
    BINARY: FamilySpec(BINARY, "nodes", None, 1, (2, 7, 4, 5), (0, 5, 2, 3),
                       1.0, 14),
}


def get_family(name) -> FamilySpec:
    if isinstance(name, FamilySpec):
        return name
    try:
        return FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")


class MethodDisagreement(AssertionError):
    """Two supposedly identical computations of a series differ."""

    def __init__(self, what, order):
        super().__init__(f"{what}: first differing order {order}")
        self.order = order


# ---------------------------------------------------------------------------
# core series
# ---------------------------------------------------------------------------


def _z_map(fam: FamilySpec, one: Series):
    n = one.order

    if fam.name == PM1:
        def f(z):
            num = (one + z).pow(4)
            den = one + z.square()
            return (num * den.reciprocal()).shift_up()
    elif fam.name == ZPM1:
        def f(z):
            num = (one + z.scale(4) + z.square()).square()
            den = one + z + z.square()
            return (num * den.reciprocal()).shift_up()
    else:
        def f(z):
            num = (one + z.square()).square()
            den = one - z + z.square()
            return (num * den.reciprocal()).shift_up()
    return f


def _t_from_z(fam: FamilySpec, z: Series) -> Series:
    one = Series.one(QQ, z.order)
    if fam.name == PM1:
        return (one + z).square() * (one + z.square()).reciprocal()
    if fam.name == ZPM1:
        return (one + z.scale(4) + z.square()) * (one + z + z.square()).reciprocal()
    return (one + z.square()) * (one - z + z.square()).reciprocal()


class FamilyComputation:
    """All exact series of one family at one truncation order, built lazily
    and shared between the two computation routes."""

    def __init__(self, family, order: int):
        self.fam = get_family(family)
        self.order = order
        self.J = order + 2
        self._cache = {}

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    # -- base series ---------------------------------------------------------

    @property
    def z(self) -> Series:
        def build():
            one = Series.one(QQ, self.order)
            z = solve_fixed_point(_z_map(self.fam, one), QQ, self.order, 0)
            t = _t_from_z(self.fam, z)
            # residuals of the defining relations are internal invariants
            quad = Series.one(QQ, self.order) + \
                t.square().shift_up().scale(self.fam.t_quadratic)
            if not (quad - t).is_zero():
                raise AssertionError("T fails its quadratic equation")
            self._cache["t"] = t
            return z
        return self._memo("z", build)

    @property
    def t(self) -> Series:
        _ = self.z
        return self._cache["t"]

    @property
    def zu(self) -> Series:
        return self._memo("zu", lambda: self.z.lift_u())

    @property
    def tu(self) -> Series:
        return self._memo("tu", lambda: self.t.lift_u())

    def z_power_q(self, k: int) -> Series:
        """Cached k-th power of Z over the rationals."""
        powers = self._memo("zpowq", lambda: {0: Series.one(QQ, self.order)})
        if k not in powers:
            top = max(powers)
            cur = powers[top]
            for e in range(top + 1, k + 1):
                cur = cur * self.z
                powers[e] = cur
        return powers[k]

    def z_power(self, k: int) -> Series:
        """Cached k-th power of Z in the u-lifted ring."""
        powers = self._memo("zpow", lambda: {})
        if k not in powers:
            powers[k] = self.z_power_q(k).lift_u()
        return powers[k]

    def geom_inv_q(self, a: int) -> Series:
        """1/(1 - Z^a) as the finite geometric sum of cached powers."""
        memo = self._memo("geom", lambda: {})
        if a not in memo:
            out = Series.one(QQ, self.order)
            m = a
            while m <= self.order:
                out = out + self.z_power_q(m)
                m += a
            memo[a] = out
        return memo[a]

    # -- direct recurrence systems --------------------------------------------

    def chain(self, kind: str) -> dict:
        """Solve the truncated coupled system for T/S/R, order by order."""
        return self._memo(("chain", kind), lambda: self._solve_chain(kind))

    def _closure(self, kind, side):
        """Series standing in for chain members beyond the closure index."""
        if side > 0 or kind in ("T", "S"):
            if kind == "T":
                return self.t
            return self.tu
        # below the window every node is marked
        ttu = self.t.subs_tu()
        if self.fam.name == BINARY:
            return ttu
        return ttu.scale(ULaurent.monomial(1, 1))  # u*T(tu): n+1 nodes

    def _solve_chain(self, kind):
        fam, N, J = self.fam, self.order, self.J
        binary = fam.name == BINARY
        ring = QQ if kind == "T" else UL
        js = list(range(0, J + 1)) if kind == "T" else list(range(-J, J + 1))

        u_mark = ULaurent.monomial(1, 1)

        def base(j):
            if kind == "T" or binary:
                return ring.one
            if (kind == "S" and j == 0) or (kind == "R" and j <= 0):
                return u_mark
            return ring.one

        def mark(j):
            if binary and ((kind == "S" and j == 0) or (kind == "R" and j <= 0)):
                return u_mark
            return None

        # fixed out-of-range neighbours
        fixed = {}
        if kind == "T":
            fixed[-1] = Series.zeros(QQ, N) if not binary else Series.one(QQ, N)
            fixed[J + 1] = self._closure(kind, +1)
        else:
            fixed[J + 1] = self._closure(kind, +1)
            fixed[-J - 1] = self._closure(kind, -1)

        # flattened coefficient storage
        coeffs = {j: [base(j)] for j in js}
        for j, s in fixed.items():
            coeffs[j] = s.c

        if ring is UL:
            offs = {j: [c[0].off] for j, c in coeffs.items() if j in js}
            runs = {j: [c[0].c] for j, c in coeffs.items() if j in js}
            for j, s in fixed.items():
                offs[j] = [v.off for v in s.c]
                runs[j] = [v.c for v in s.c]
            nbr_offs = {j: [] for j in js}
            nbr_runs = {j: [] for j in js}

            for n in range(1, N + 1):
                m = n - 1
                for j in js:
                    if binary:
                        lo, lr = offs[j - 1], runs[j - 1]
                        ho, hr = offs[j + 1], runs[j + 1]
                        off, run = kernels.uconv_at(lo, lr, ho, hr, m)
                        val = _trim(off, run)
                    else:
                        s = _trim(*_laurent_sum(
                            (offs[j - 1][m], runs[j - 1][m]),
                            (offs[j + 1][m], runs[j + 1][m]),
                            (offs[j][m], runs[j][m]) if fam.name == ZPM1 else None,
                        ))
                        nbr_offs[j].append(s.off)
                        nbr_runs[j].append(s.c)
                        off, run = kernels.uconv_at(
                            offs[j], runs[j], nbr_offs[j], nbr_runs[j], m)
                        val = _trim(off, run)
                    mk = mark(j)
                    if mk is not None:
                        val = val * mk
                    coeffs[j].append(val)
                    offs[j].append(val.off)
                    runs[j].append(val.c)
        else:
            nbr = {j: [] for j in js}
            for n in range(1, N + 1):
                m = n - 1
                for j in js:
                    if binary:
                        val = kernels.conv_at(coeffs[j - 1], coeffs[j + 1], m)
                    else:
                        s = coeffs[j - 1][m] + coeffs[j + 1][m]
                        if fam.name == ZPM1:
                            s += coeffs[j][m]
                        nbr[j].append(s)
                        val = kernels.conv_at(coeffs[j], nbr[j], m)
                    coeffs[j].append(val)

        return {j: Series(ring, coeffs[j]) for j in js}

    # -- product forms ---------------------------------------------------------

    def t_product(self, j: int) -> Series:
        """Closed product form of T_j (valid for j >= -1)."""
        if j < -1:
            raise ValueError("T_j has no product form below j = -1")

        def build():
            a1, a2, b1, b2 = (e + j for e in self.fam.t_exponents)
            one = Series.one(QQ, self.order)
            num = (one - self.z_power_q(a1)) * (one - self.z_power_q(a2))
            return self.t * num * self.geom_inv_q(b1) * self.geom_inv_q(b2)
        return self._memo(("tprod", j), build)

    def product_su(self, w: Series, j: int) -> Series:
        """S_j/R_j product form: T (1+wZ^{j+a1})(1+wZ^{j+a2}) / (...), j >= 0."""
        a1, a2, b1, b2 = (e + j for e in self.fam.su_exponents)
        one = Series.one(UL, self.order)
        f = lambda k: one + w * self.z_power(k)
        num = f(a1) * f(a2)
        den = f(b1) * f(b2)
        return self.tu * num * den.reciprocal()

    @property
    def mu(self) -> Series:
        return self._memo("mu", self._solve_mu)

    def _solve_mu(self):
        N = self.order
        one = Series.one(UL, N)
        z = self.zu
        z2 = z.square()
        um1 = U_MINUS_ONE
        if self.fam.name == PM1:
            pre = ((one + z2) *
                   ((one + z) * (one + z + z2) * (one - z).pow(3)).reciprocal()
                   ).scale(um1)

            def f(mu):
                num = (one + mu * z) * (one + mu * z2) * (one + mu * self.z_power(3))
                return pre * num * (one - mu * z2).reciprocal()
        elif self.fam.name == ZPM1:
            pre = ((one + z + z2) *
                   ((one + z).square() * (one - z).pow(3)).reciprocal()).scale(um1)

            def f(mu):
                num = (one + mu * z).square() * (one + mu * z2).square()
                return pre * num * (one - mu.square() * self.z_power(3)).reciprocal()
        else:
            pre = (z * ((one + z).square() * (one + z + z2) *
                        (one - z).pow(3)).reciprocal()).scale(um1)

            def f(mu):
                num = (one + mu * z).square() * (one + mu * z2) * \
                    (one + mu * self.z_power(6))
                return pre * num * (one - mu.square() * self.z_power(5)).reciprocal()

        mu0 = ULaurent() if self.fam.name == BINARY else U_MINUS_ONE
        return solve_fixed_point(f, UL, N, mu0)

    @property
    def nu(self) -> Series:
        """The tail-series parameter, fitted order by order against the
        direct system's R_0 (the product form matches it by construction)."""
        return self._memo("nu", self._fit_nu)

    def _fit_nu(self):
        N = self.order
        r0 = self.chain("R")[0]
        nu = Series.zeros(UL, N)
        for _ in range(N + 2):
            resid = r0 - self.product_su(nu, 0)
            if resid.is_zero():
                break
            nu = nu + resid
        else:
            raise MethodDisagreement("nu fit did not converge",
                                     (r0 - self.product_su(nu, 0)).valuation())
        nu.assert_polynomial_coeffs()
        return nu

    @property
    def nu_closed(self) -> Series:
        """Independent radical/Lagrangian route to nu (first family only)."""
        if self.fam.name != PM1:
            raise ValueError("the closed nu route exists for the pm1 family only")
        return self._memo("nu_closed", self._nu_closed_pm1)

    def _nu_closed_pm1(self):
        M = self.order + 1  # one spare order for the division by t
        comp = computation(PM1, M)
        one = Series.one(UL, M)
        z = comp.zu
        quarter = ULaurent.const(rat(1, 4))

        # delta = (1-8tu)/(1-8t), also expressible through Z
        num = Series.from_coeffs(UL, [ULaurent.const(1), ULaurent.monomial(-8, 1)], M)
        den = Series.from_coeffs(UL, [ULaurent.const(1), ULaurent.const(-8)], M)
        delta = num * den.reciprocal()
        alt = one - (comp.z_power(1) * (one + z.square()) *
                     (one - z).pow(4).reciprocal()).scale(U_MINUS_ONE.scaled(8))
        if not (delta - alt).is_zero():
            raise AssertionError("the two closed forms of delta disagree")

        v = (one - delta.sqrt_unit()).scale(quarter)
        disc = (one - v).square() - \
            (z * v.square() * (one + z).square().reciprocal()).scale(ULaurent.const(4))

        inv_1z = (one + z).reciprocal()

        def f(p):
            return v * inv_1z * (one + p) * (one + z * p)

        p = solve_fixed_point(f, UL, M, ULaurent())

        lagr = (v * z * p).scale(ULaurent.const(2)) - \
            (one + z) * (one - v - disc.sqrt_unit())
        if not lagr.is_zero():
            raise AssertionError("Lagrangian series fails its radical closed form")

        p_over_z = p.divide_t() * comp.z.divide_t().lift_u().reciprocal()
        n = self.order
        one_n = Series.one(UL, n)
        pt = p.truncate(n)
        zt = z.truncate(n)
        poly2 = one_n + zt + zt.square()
        nu_num = one_n - pt * (one_n + zt) - pt.square() * poly2
        nu_den = poly2 + pt * zt * (one_n + zt) - pt.square() * zt.square()
        return p_over_z * nu_num * nu_den.reciprocal()

    # -- derived quantities ---------------------------------------------------

    def u_exceed(self, j: int) -> Series:
        """U_j = T - T_j, trees with at least one label above j."""
        return self.t - self.t_product(j)

    def v_kernel_pm1(self, j: int) -> Series:
        """V(Z^j) with V(x) = x Z (1+Z)(1-Z^3)/((1+Z^2)(1-x Z^2)), j >= 0 (pm1)."""
        head = self._memo("vhead", self._v_head)
        return self._memo(("vk", j),
                          lambda: self.z_power_q(j) * head * self.geom_inv_q(j + 2))

    def _v_head(self):
        one = Series.one(QQ, self.order)
        z = self.z
        return z * (one + z) * (one - self.z_power_q(3)) * \
            (one + z.square()).reciprocal()


def _laurent_sum(*terms):
    """Sum of (off, run) pairs; None entries are skipped."""
    acc = ULaurent()
    for term in terms:
        if term is None:
            continue
        off, run = term
        if run:
            acc = acc + ULaurent(off, run)
    return acc.off, acc.c


@lru_cache(maxsize=16)
def computation(family_name: str, order: int) -> FamilyComputation:
    return FamilyComputation(family_name, order)


# ---------------------------------------------------------------------------
# spec-level operations
# ---------------------------------------------------------------------------


def base_series(family, order: int):
    comp = computation(get_family(family).name, order)
    return comp.z, comp.t


def t_bounded(family, j: int, order: int, method: str = "product") -> Series:
    if j < -1:
        raise ValueError("T_j is defined for j >= -1")
    comp = computation(get_family(family).name, order)
    if method == "product":
        return comp.t_product(j)
    if method == "recurrence":
        if j == -1:
            return Series.one(QQ, order) if comp.fam.name == BINARY \
                else Series.zeros(QQ, order)
        return comp.chain("T")[j]
    raise ValueError(f"unknown method {method!r}")


def s_label(family, j: int, order: int, method: str = "product") -> Series:
    comp = computation(get_family(family).name, order)
    if method == "recurrence":
        return comp.chain("S")[j]
    if method == "product":
        return comp.product_su(comp.mu, abs(j))
    raise ValueError(f"unknown method {method!r}")


def r_atleast(family, j: int, order: int, method: str = "product") -> Series:
    comp = computation(get_family(family).name, order)
    if method == "recurrence":
        return comp.chain("R")[j]
    if method == "product":
        if j >= 0:
            return comp.product_su(comp.nu, j)
        # reflection through the tilde transform
        rp = comp.product_su(comp.nu, -j + 1).tilde()
        if comp.fam.name == BINARY:
            return rp
        return rp.scale(ULaurent.monomial(1, 1))
    raise ValueError(f"unknown method {method!r}")


def mu_series(family, order: int) -> Series:
    return computation(get_family(family).name, order).mu


def nu_series(family, order: int, method: str = "fit") -> Series:
    comp = computation(get_family(family).name, order)
    if method == "fit":
        return comp.nu
    if method == "closed":
        return comp.nu_closed
    raise ValueError(f"unknown method {method!r}")


def u_exceed(family, j: int, order: int) -> Series:
    return computation(get_family(family).name, order).u_exceed(j)


def exact_max_moment(family, k: int, n: int, order: int | None = None) -> object:
    """E(M_n^k) as an exact rational, from the finite sum of the U_j.

    Passing an `order` larger than n lets several n share one computation
    (the coefficient of t^n is truncation-stable).
    """
    fam = get_family(family)
    comp = computation(fam.name, max(n, order or 0))
    csum = 0
    for j in range(n):
        w = (j + 1) ** k - j ** k
        csum += w * comp.u_exceed(j).coeff(n)
    return rat_div(csum, fam.total_count(n))


def max_moment_kernel_route(k: int, n: int, order: int | None = None) -> object:
    """pm1 cross-check of exact_max_moment through the summation kernel
    V(x) = xZ(1+Z)(1-Z^3)/((1+Z^2)(1-xZ^2)) and second differences."""
    fam = get_family(PM1)
    comp = computation(PM1, max(n, order or 0))
    v1 = comp._memo("v_at_one",
                    lambda: comp._memo("vhead", comp._v_head) * comp.geom_inv_q(2))
    csum = v1.coeff(n) + (2 ** k - 1) * comp.v_kernel_pm1(1).coeff(n)
    for j in range(2, n):
        w = (j + 1) ** k - j ** k - (j - 1) ** k + (j - 2) ** k
        if w:
            csum += w * comp.v_kernel_pm1(j).coeff(n)
    return rat_div(csum, fam.total_count(n))


def rat_div(a, b):
    num_a, den_a = (a, 1) if isinstance(a, int) else (int(a.numerator), int(a.denominator))
    return rat(num_a, den_a * b)


def invariant_residual(family, j: int, order: int, kind: str = "T") -> Series:
    """I(X_{j-1}, X_j) - I(X_j, X_{j+1}) for the family's invariant I."""
    if j < 0:
        raise ValueError("invariant checks need j >= 0")
    fam = get_family(family)
    comp = computation(fam.name, order)
    if kind == "T":
        x = t_bounded(fam, j - 1, order, "recurrence")
        y = t_bounded(fam, j, order, "recurrence")
        z = t_bounded(fam, j + 1, order, "recurrence")
    elif kind == "S":
        x = s_label(fam, j - 1, order, "recurrence")
        y = s_label(fam, j, order, "recurrence")
        z = s_label(fam, j + 1, order, "recurrence")
    else:
        raise ValueError("invariant kinds are 'T' and 'S'")
    return family_invariant(fam, x, y) - family_invariant(fam, y, z)


def family_invariant(family, x: Series, y: Series) -> Series:
    """The conserved function I(x, y) attached to the family's recurrence."""
    fam = get_family(family)
    ring = x.ring
    one = Series.one(ring, x.order)
    xy = x * y
    if fam.name == PM1:
        return xy * (one - x.shift_up()) * (one - y.shift_up()) + xy.shift_up() - x - y
    if fam.name == ZPM1:
        return xy * (one - (x + y).shift_up()) - x - y
    inv_xy = xy.reciprocal()
    return (x + y).shift_up(2) + \
        (x.square() - x - y + y.square()).shift_up() * inv_xy + \
        (x + y - one) * inv_xy


def s0_relation_residual(family, order: int) -> Series:
    """Residual of the family's closed polynomial relation between S_0 and T."""
    fam = get_family(family)
    comp = computation(fam.name, order)
    s0 = comp.chain("S")[0]
    t = comp.tu
    one = Series.one(UL, order)
    um1sq = U_MINUS_ONE * U_MINUS_ONE
    if fam.name == PM1:
        lhs = (t - s0).square() * (one.scale(ULaurent.const(2)) + s0 - s0 * t)
        rhs = (s0 - s0 * t + t.square().scale(ULaurent.const(2))).scale(um1sq)
        return lhs - rhs
    if fam.name == ZPM1:
        lhs = t.pow(4).scale(um1sq.scaled(9))
        poly = t.square().scale(ULaurent.const(9)) - \
            t * (t - one) * (t.scale(ULaurent.const(2)) + one) * s0.scale(ULaurent.const(2)) + \
            (t - one).square() * s0.square()
        return lhs - (t - s0).square() * poly
    # binary
    tm1 = t - one
    num = tm1.pow(4) * s0.square() - \
        t * s0 * tm1.square() * (one.scale(ULaurent.const(3)) -
                                 t.scale(ULaurent.const(9)) +
                                 t.square().scale(ULaurent.const(7))).scale(ULaurent.const(2)) + \
        t.square() * (t.square() + t - one).square()
    den = tm1 * (s0 - one) * (t.square() + t * s0 - s0).square()
    lhs = t.square().scale(um1sq) * den
    rhs = (t - s0).square().scale(ULaurent.monomial(1, 1)) * num
    return lhs - rhs


def reflection_residual(family, j: int, order: int) -> Series:
    """R_{-j}(t,u) minus its tilde-reflection of R_{j+1}, from the direct system."""
    fam = get_family(family)
    chain = computation(fam.name, order).chain("R")
    lhs = chain[-j]
    rhs = chain[j + 1].tilde()
    if fam.name != BINARY:
        rhs = rhs.scale(ULaurent.monomial(1, 1))
    return lhs - rhs


@dataclass
class LabelSeriesSet:
    """A computed bundle of every labelled-series family member at one order,
    with method provenance. The JSON dump is the golden-fixture format."""

    family: str
    order: int
    jmax: int
    z: Series
    t: Series
    t_bounded: dict
    s_label: dict
    r_atleast: dict
    mu: Series
    nu: Series
    method: dict

    def to_json(self) -> dict:
        pack = lambda d: {str(j): s.to_json() for j, s in sorted(d.items())}
        return {
            "family": self.family,
            "order": self.order,
            "jmax": self.jmax,
            "method": dict(self.method),
            "series": {
                "Z": self.z.to_json(),
                "T": self.t.to_json(),
                "T_j": pack(self.t_bounded),
                "S_j": pack(self.s_label),
                "R_j": pack(self.r_atleast),
                "mu": self.mu.to_json(),
                "nu": self.nu.to_json(),
            },
        }

    @staticmethod
    def from_json(obj) -> "LabelSeriesSet":
        unpack = lambda d: {int(j): Series.from_json(s) for j, s in d.items()}
        ser = obj["series"]
        return LabelSeriesSet(
            family=obj["family"], order=obj["order"], jmax=obj["jmax"],
            z=Series.from_json(ser["Z"]), t=Series.from_json(ser["T"]),
            t_bounded=unpack(ser["T_j"]), s_label=unpack(ser["S_j"]),
            r_atleast=unpack(ser["R_j"]), mu=Series.from_json(ser["mu"]),
            nu=Series.from_json(ser["nu"]), method=dict(obj["method"]),
        )


def build_label_set(family, order: int, jmax: int = 10,
                    method: str = "product") -> LabelSeriesSet:
    fam = get_family(family)
    t_b = {j: t_bounded(fam, j, order, method) for j in range(-1, jmax + 1)}
    s_l = {j: s_label(fam, j, order, method) for j in range(-jmax, jmax + 1)}
    r_a = {j: r_atleast(fam, j, order, method) for j in range(-jmax, jmax + 1)}
    comp = computation(fam.name, order)
    provenance = {"T_j": method, "S_j": method, "R_j": method,
                  "mu": "fixed-point", "nu": "order-by-order fit"}
    return LabelSeriesSet(fam.name, order, jmax, comp.z, comp.t,
                          t_b, s_l, r_a, comp.mu, comp.nu, provenance)


def u_exceed_kernel_residual(j: int, order: int) -> Series:
    """U_j minus the telescoping kernel difference V(Z^j) - V(Z^{j+2}) (pm1)."""
    comp = computation(PM1, order)
    return comp.u_exceed(j) - (comp.v_kernel_pm1(j) - comp.v_kernel_pm1(j + 2))


def u_exceed_explicit_residual(j: int, order: int) -> Series:
    """U_j minus its explicit closed form
    (1+Z)^2 Z^{j+1} (1+Z+Z^2)(1-Z)^2 / ((1+Z^2)(1-Z^{j+2})(1-Z^{j+4})) (pm1)."""
    comp = computation(PM1, order)
    one = Series.one(QQ, order)
    z = comp.z
    closed = (one + z).square() * comp.z_power_q(j + 1) * \
        (one + z + z.square()) * (one - z).square() * \
        (one + z.square()).reciprocal() * comp.geom_inv_q(j + 2) * \
        comp.geom_inv_q(j + 4)
    return comp.u_exceed(j) - closed


def consistency_residual_pm1(order: int) -> Series:
    """Residual of the printed cross-relation tying nu to its tilde transform
    (reported, never gated; see the verification suite)."""
    comp = computation(PM1, order)
    one = Series.one(UL, order)
    nu = comp.nu
    tnu = nu.tilde()
    z = comp.zu
    tz = z.tilde()
    t = comp.tu
    tt = t.tilde()

    def zpow(base, k):
        out = Series.one(UL, order)
        for _ in range(k):
            out = out * base
        return out

    f = lambda w, base, k: one + w * zpow(base, k)
    lhs = (one + nu) * t * f(nu, z, 4) * f(tnu, tz, 2) * f(tnu, tz, 4)
    rhs = (tt * f(nu, z, 1) * f(nu, z, 3) * f(tnu, tz, 1) *
           f(tnu, tz, 5)).scale(ULaurent.monomial(1, 1))
    return lhs - rhs
