"""Floating-point evaluation of the limit laws.

Everything here evaluates the limiting objects attached to the three
rescaled tree statistics: the max-label law (tail G, density f, moments),
the occupation law (Laplace transform L through the algebraic kernel A)
and the tail law (Laplace transform through the kernel B), plus the
rescalings that express them as functionals of the integrated
superBrownian excursion.

All contour integrals run over the two half-lines through v = 1 with slopes
e^{+-i pi/4}. The orientation (from the lower ray, through the corner, out
the upper ray) is pinned by the reciprocal-gamma calibration identity that
doubles as the quadrature self-test; the integrand decays like e^{-s^4}
along the rays, so truncating at s_max = 5 leaves a tail below e^{-600}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .rings import QQ, rat
from .series import Series, solve_fixed_point

SQRT_PI = math.sqrt(math.pi)
A_RADIUS = 4.0 / math.sqrt(3.0)  # radius of convergence of the kernel A
A_BOUND = 2.0 - math.sqrt(3.0)   # sup of |A| on its disk
IMAG_GATE = 1e-9

_W_UP = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
_W_DOWN = _W_UP.conjugate()


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-10
    s_max: float = 5.0
    max_subdiv: int = 200


@dataclass
class QuadResult:
    value: object            # float or complex
    error: float
    nodes: int

    def __post_init__(self):
        if self.error < 0:
            raise ValueError("error estimate must be nonnegative")


DEFAULT = QuadConfig()


def _quad(f, a, b, cfg: QuadConfig):
    counter = [0]

    def g(x):
        counter[0] += 1
        return f(x)

    val, err = quad(g, a, b, limit=cfg.max_subdiv,
                    epsabs=cfg.rel_tol, epsrel=cfg.rel_tol)
    return val, err, counter[0]


def contour_integral(f, cfg: QuadConfig = DEFAULT) -> QuadResult:
    """Integral of f over the bent contour, both rays evaluated separately
    (no conjugation shortcut, so the imaginary residue is a real check)."""
    total = 0j
    err = 0.0
    nodes = 0
    for w, sign in ((_W_UP, +1.0), (_W_DOWN, -1.0)):
        for part in (np.real, np.imag):
            def g(s, w=w, part=part):
                v = 1.0 + s * w
                return part(f(v) * w)
            val, e, k = _quad(g, 0.0, cfg.s_max, cfg)
            total += sign * (val if part is np.real else 1j * val)
            err += e
            nodes += k
    return QuadResult(total, err, nodes)


def _real_part(res: QuadResult, what: str) -> QuadResult:
    if abs(res.value.imag) >= IMAG_GATE:
        raise QuadratureError(
            f"{what}: imaginary residue {res.value.imag:.3e} above gate")
    return QuadResult(res.value.real, res.error, res.nodes)


def recip_gamma_contour(s: float, cfg: QuadConfig = DEFAULT) -> QuadResult:
    """1/Gamma(s) from the bent-contour integral of v^(3-4s) e^(v^4);
    the quadrature self-test behind every integral in this module."""
    res = contour_integral(lambda v: v ** (3 - 4 * s) * np.exp(v ** 4), cfg)
    return _real_part(QuadResult(res.value * 2.0 / (1j * math.pi),
                                 res.error, res.nodes), "recip_gamma")


# ---------------------------------------------------------------------------
# max-label law
# ---------------------------------------------------------------------------


def _oscillator_ratio(x):
    """(1 - cos x cosh x) / (cosh x - cos x)^2, smooth at 0 (limit 1/6).

    Near 0 both pieces are evaluated by series (cos x cosh x has only x^{4k}
    terms with ratio -4, the difference only x^{4k+2} terms), which dodges
    the catastrophic cancellation of the direct formula.
    """
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 0.5
    xs = np.where(small, x, 0.0)
    x4 = xs ** 4
    num = x4 / 6.0 - x4 ** 2 / 2520.0 + x4 ** 3 / 7484400.0
    den = xs ** 2 + xs ** 6 / 360.0 + xs ** 10 / 1814400.0
    xl = np.where(small, 1.0, x)
    big = (1.0 - np.cos(xl) * np.cosh(xl)) / (np.cosh(xl) - np.cos(xl)) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        small_val = np.where(den > 0, num / np.where(den > 0, den ** 2, 1.0), 1.0 / 6.0)
    out = np.where(small, small_val, big)
    if out.ndim == 0:
        return float(out)
    return out


G_SMALL_LAMBDA = 0.05  # below this G = 1 to well under 1e-12


def g_tail(lam: float, cfg: QuadConfig = DEFAULT, form: str = "real") -> QuadResult:
    """Tail law of the rescaled maximum label, P(N > lambda)."""
    if lam <= 0:
        raise ValueError("the tail law is defined for lambda > 0")
    if form == "contour":
        res = contour_integral(
            lambda v: v ** 5 * np.exp(v ** 4) / np.sinh(lam * v) ** 2, cfg)
        return _real_part(QuadResult(res.value * 12.0 / (1j * SQRT_PI),
                                     res.error, res.nodes), "g_tail")
    if form != "real":
        raise ValueError(f"unknown form {form!r}")
    if lam < G_SMALL_LAMBDA:
        # left tail is lighter than any power; 1 is exact to ~1e-12 here
        return QuadResult(1.0, 1e-12, 0)

    def f(w):
        return float(_oscillator_ratio(lam * w)) * w ** 5 * math.exp(-w ** 4 / 4.0)

    val, err, k = _quad(f, 0.0, 12.0, cfg)
    return QuadResult(6.0 / SQRT_PI * val, 6.0 / SQRT_PI * err, k)


def f_density(lam: float, cfg: QuadConfig = DEFAULT, form: str = "real") -> QuadResult:
    """Density of the rescaled maximum label, -G'(lambda)."""
    if lam <= 0:
        raise ValueError("the density is evaluated for lambda > 0")
    if form == "contour":
        res = contour_integral(
            lambda v: np.cosh(lam * v) * v ** 6 * np.exp(v ** 4)
            / np.sinh(lam * v) ** 3, cfg)
        return _real_part(QuadResult(res.value * 24.0 / (1j * SQRT_PI),
                                     res.error, res.nodes), "f_density")
    if form != "real":
        raise ValueError(f"unknown form {form!r}")
    if lam < 1e-3:
        return QuadResult(0.0, 1e-12, 0)

    def f(w):
        return float(_oscillator_ratio(lam * w)) * w ** 5 * (6.0 - w ** 4) * \
            math.exp(-w ** 4 / 4.0)

    val, err, k = _quad(f, 0.0, 12.0, cfg)
    scale = 6.0 / (SQRT_PI * lam)
    return QuadResult(scale * val, abs(scale) * err, k)


def zeta(s: int) -> float:
    """Riemann zeta at integer s >= 2: pi-power closed forms at even s,
    accelerated alternating series elsewhere."""
    if s < 2:
        raise ValueError("zeta(s) needed for s >= 2 only")
    closed = {2: math.pi ** 2 / 6, 4: math.pi ** 4 / 90, 6: math.pi ** 6 / 945,
              8: math.pi ** 8 / 9450, 10: math.pi ** 10 / 93555}
    if s in closed:
        return closed[s]
    return _eta_borwein(s) / (1.0 - 2.0 ** (1 - s))


def _eta_borwein(s: int, n: int = 28) -> float:
    """Alternating zeta via Chebyshev acceleration; error ~ (3+sqrt 8)^-n."""
    run = 0
    d = []
    for i in range(n + 1):
        run += math.factorial(n + i - 1) * 4 ** i // \
            (math.factorial(n - i) * math.factorial(2 * i))
        d.append(n * run)
    dn = d[-1]
    total = 0.0
    for k in range(n):
        total += (-1) ** k * (d[k] - dn) / (k + 1) ** s
    return -total / dn


def moment_n_limit(k: int) -> float:
    """k-th moment of the limiting rescaled maximum."""
    if k < 1:
        raise ValueError("moments start at k = 1")
    if k == 1:
        return 3.0 * SQRT_PI / (2.0 * math.gamma(0.75))
    if k == 2:
        return 3.0 * SQRT_PI
    return 24.0 * SQRT_PI * math.factorial(k) * zeta(k - 1) / \
        (2.0 ** k * math.gamma((k - 2) / 4.0))


def moment_n_quadrature(k: int, cfg: QuadConfig = DEFAULT) -> QuadResult:
    """Same moment through k * int lambda^{k-1} G(lambda) d lambda."""
    head = G_SMALL_LAMBDA ** k  # G = 1 on [0, small]
    def f(lam):
        return lam ** (k - 1) * g_tail(lam, cfg).value
    val, err, nodes = _quad(f, G_SMALL_LAMBDA, 25.0, cfg)
    return QuadResult(head + k * val, k * err, nodes)


# ---------------------------------------------------------------------------
# the algebraic kernels A and B
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def _a_taylor():
    order = 48
    one = Series.one(QQ, order)
    x = Series.from_coeffs(QQ, [0, 1], order)

    def f(a):
        num = x * (one + a).pow(3)
        return num.scale(rat(1, 24)) * (one - a).reciprocal()

    a = solve_fixed_point(f, QQ, order, 0)
    return np.array([float(c) for c in a.c])


def a_eval(x, tol: float = 1e-13):
    """The occupation kernel: root of 24 A (1 - A) = x (1 + A)^3 with A(0) = 0,
    bounded by 2 - sqrt(3) on its disk of convergence |x| <= 4/sqrt(3)."""
    if isinstance(x, complex) or isinstance(x, np.complexfloating):
        xc = complex(x)
    else:
        xr = float(x)
        if abs(xr) >= A_RADIUS:
            raise ValueError("kernel argument outside (-4/sqrt3, 4/sqrt3)")
        # real arguments: trigonometric closed form of the cubic
        phi = math.acos(-xr * math.sqrt(3.0) / 4.0)
        return 2.0 / (1.0 + 2.0 / math.sqrt(3.0) * math.cos(phi / 3.0)) - 1.0
    if abs(xc) > A_RADIUS:
        raise ValueError("kernel argument outside the closed disk of radius 4/sqrt3")
    if xc == 0:
        return 0j
    coeffs = _a_taylor()
    z = _a_predict(xc, coeffs)
    z = _a_newton(xc, z)
    if abs(24 * z * (1 - z) - xc * (1 + z) ** 3) > tol * 24 or abs(z) > A_BOUND + 1e-6:
        # homotopy restart along the ray from a small argument
        z = _a_predict(0.5 * xc / abs(xc), coeffs)
        for mag in np.linspace(0.5, abs(xc), 12)[1:]:
            z = _a_newton(mag * xc / abs(xc), z)
        if abs(24 * z * (1 - z) - xc * (1 + z) ** 3) > tol * 24:
            raise QuadratureError(f"kernel root tracking failed at x = {xc}")
        if abs(z) > A_BOUND + 1e-6:
            raise QuadratureError(f"continuation ambiguity at x = {xc}")
    return z


def _a_predict(x, coeffs):
    if abs(x) > 2.0:
        x = 2.0 * x / abs(x)
    return complex(np.polyval(coeffs[::-1], x))


def _a_newton(x, z):
    for _ in range(80):
        f = x * (1 + z) ** 3 - 24 * z * (1 - z)
        fp = 3 * x * (1 + z) ** 2 - 24 + 48 * z
        dz = f / fp
        z -= dz
        if abs(dz) < 1e-16:
            break
    return z


def b_eval(x):
    """The tail kernel: nested radicals, analytic for |x| < 1 and bounded
    there by 22*sqrt(2) - 31."""
    if abs(x) >= 1.0 + 1e-15:
        raise ValueError("tail kernel argument outside the unit disk")
    xc = complex(x)
    d = np.sqrt((1.0 + np.sqrt(1.0 - xc)) / 2.0)
    out = -(1.0 - d) * (1.0 - 2.0 * d) / ((1.0 + d) * (1.0 + 2.0 * d))
    if isinstance(x, (int, float)) and x <= 1.0:
        return out.real
    return complex(out)


# ---------------------------------------------------------------------------
# Laplace transforms of the local and global laws
# ---------------------------------------------------------------------------


def laplace_local(lam: float, a: float, cfg: QuadConfig = DEFAULT) -> QuadResult:
    """E exp(a Y(lambda)) for the rescaled occupation count."""
    if lam < 0:
        raise ValueError("lambda >= 0")
    if abs(a) >= A_RADIUS:
        raise ValueError("Laplace argument outside (-4/sqrt3, 4/sqrt3)")
    if a == 0:
        return QuadResult(1.0, 0.0, 0)  # the kernel kills the integrand exactly

    def f(v):
        av = a_eval(a / v ** 3)
        e = np.exp(-2.0 * lam * v)
        return av * e / (1.0 + av * e) ** 2 * v ** 5 * np.exp(v ** 4)

    res = contour_integral(f, cfg)
    out = QuadResult(1.0 + res.value * 48.0 / (1j * SQRT_PI), res.error, res.nodes)
    if isinstance(a, complex):
        return out
    return _real_part(out, "laplace_local")


def laplace_global(lam: float, a: float, cfg: QuadConfig = DEFAULT) -> QuadResult:
    """E exp(a Y+(lambda)) for the rescaled tail count."""
    if lam < 0:
        raise ValueError("lambda >= 0")
    if abs(a) >= 1.0:
        raise ValueError("Laplace argument outside (-1, 1)")
    if a == 0:
        return QuadResult(1.0, 0.0, 0)

    def f(v):
        bv = b_eval(a / v ** 4)
        e = np.exp(-2.0 * lam * v)
        return bv * e / (1.0 + bv * e) ** 2 * v ** 5 * np.exp(v ** 4)

    res = contour_integral(f, cfg)
    out = QuadResult(1.0 + res.value * 48.0 / (1j * SQRT_PI), res.error, res.nodes)
    if isinstance(a, complex):
        return out
    return _real_part(out, "laplace_global")


# cos(m*pi/4) for m = 0..7, exact up to the sqrt
_HALF_SQRT2 = math.sqrt(2.0) / 2.0
_COS8 = [1.0, _HALF_SQRT2, 0.0, -_HALF_SQRT2, -1.0, -_HALF_SQRT2, 0.0, _HALF_SQRT2]


def mean_y(lam: float) -> float:
    """Limiting mean of the rescaled occupation count at scaled height lambda."""
    term = 1.0
    total = 0.0
    m = 0
    while True:
        c = _COS8[(m + 1) % 8]
        contrib = term * c * math.gamma((m + 3) / 4.0)
        total += contrib
        term *= (-2.0 * abs(lam)) / (m + 1)
        m += 1
        if m > 16 and abs(term) * math.gamma((m + 3) / 4.0) < 1e-16 * max(1.0, abs(total)):
            break
        if m > 600:
            raise ArithmeticError("mean series failed to converge")
    return total / SQRT_PI


def mean_yplus(lam: float) -> float:
    """Limiting mean of the rescaled tail count at scaled height lambda."""
    term = 1.0
    total = 0.0
    m = 0
    while True:
        c = _COS8[m % 8]
        contrib = term * c * math.gamma((m + 2) / 4.0)
        total += contrib
        term *= (-2.0 * lam) / (m + 1)
        m += 1
        if m > 16 and abs(term) * math.gamma((m + 2) / 4.0) < 1e-16 * max(1.0, abs(total)):
            break
        if m > 600:
            raise ArithmeticError("mean series failed to converge")
    return total / (2.0 * SQRT_PI)


# ---------------------------------------------------------------------------
# moments of the laws at lambda = 0
# ---------------------------------------------------------------------------


def moments_small(which: str, k: int):
    """Closed-form k-th moments at height 0: the occupation law (a scaled
    inverse square root of a 2/3-stable variable) and the tail law
    (uniform on [0,1])."""
    if k < 0:
        raise ValueError("k >= 0")
    if which == "Y0":
        return (math.sqrt(2.0) / 3.0) ** k * \
            math.gamma(1.0 + 0.75 * k) / math.gamma(1.0 + 0.5 * k)
    if which == "Yplus0":
        return 1.0 / (k + 1)
    raise ValueError("which is 'Y0' or 'Yplus0'")


def occupation_inversion_check(kmax: int = 8):
    """Exact Lagrange-style coefficient identity behind the occupation
    moments: [x^k] chi/(1+chi) for chi = (x/6)(1+chi)^{3/2}. Returns the
    first failing k or None."""
    order = kmax
    one = Series.one(QQ, order)
    x = Series.from_coeffs(QQ, [0, 1], order)

    def f(c):
        p = one + c
        return x.scale(rat(1, 6)) * p.sqrt_unit() * p

    chi = solve_fixed_point(f, QQ, order, 0)
    ratio = chi * (one + chi).reciprocal()
    for k in range(1, kmax + 1):
        want = rat(1, 6 ** k * math.factorial(k))
        for i in range(k - 1):
            want = want * (rat(k, 2) + i)
        if ratio.coeff(k) != want:
            return k
    return None


def tail_inversion_check(kmax: int = 8):
    """Exact coefficient identity behind the tail moments:
    [x^k] chi(3-chi)/(1+chi) for chi = (x/4)(1+chi)^2."""
    order = kmax
    one = Series.one(QQ, order)
    x = Series.from_coeffs(QQ, [0, 1], order)

    def f(c):
        return x.scale(rat(1, 4)) * (one + c).square()

    chi = solve_fixed_point(f, QQ, order, 0)
    ratio = chi * (one.scale(3) - chi) * (one + chi).reciprocal()
    for k in range(1, kmax + 1):
        want = rat(6 * math.factorial(2 * k - 2),
                   4 ** k * math.factorial(k - 1) * math.factorial(k + 1))
        if ratio.coeff(k) != want:
            return k
    return None


def taylor_moments(kind: str, kmax: int, cfg: QuadConfig = DEFAULT,
                   radius: float | None = None, points: int = 64):
    """Moments E(Y(0)^k) / E(Y+(0)^k) read off the Laplace transform by a
    Cauchy-circle discretization (spectrally accurate in `points`)."""
    if kind == "local":
        r = radius if radius is not None else 1.3
        f = lambda z: laplace_local(0.0, z, cfg).value
    elif kind == "global":
        r = radius if radius is not None else 0.6
        f = lambda z: laplace_global(0.0, z, cfg).value
    else:
        raise ValueError("kind is 'local' or 'global'")
    vals = np.array([f(r * np.exp(2j * np.pi * m / points)) for m in range(points)])
    coeffs = np.fft.fft(vals) / points
    out = []
    for k in range(1, kmax + 1):
        ck = coeffs[k] / r ** k
        out.append(float(ck.real) * math.factorial(k))
    return out


# ---------------------------------------------------------------------------
# rescalings to the random-measure functionals
# ---------------------------------------------------------------------------

SQRT2 = math.sqrt(2.0)


def ise_rescale(view: str, **kw):
    """Views of the limiting random measure. The supremum and tail views are
    proved rescalings; the density view is conjectural and tagged as such."""
    if view == "supremum":
        k = kw.get("k")
        if k is not None:
            return {"view": view, "conjectural": False,
                    "moment": SQRT2 ** k * moment_n_limit(k)}
        lam = kw["lam"]
        cfg = kw.get("cfg", DEFAULT)
        g = g_tail(lam / SQRT2, cfg)
        return {"view": view, "conjectural": False, "tail": g.value,
                "density": f_density(lam / SQRT2, cfg).value / SQRT2}
    if view == "tail":
        lam = kw["lam"]
        cfg = kw.get("cfg", DEFAULT)
        out = {"view": view, "conjectural": False,
               "mean": mean_yplus(lam / SQRT2)}
        if "a" in kw:
            out["laplace"] = laplace_global(lam / SQRT2, kw["a"], cfg).value
        return out
    if view == "density-conjecture":
        lam = kw["lam"]
        cfg = kw.get("cfg", DEFAULT)
        out = {"view": view, "conjectural": True,
               "mean": mean_y(abs(lam) / SQRT2) / SQRT2}
        if "a" in kw:
            out["laplace"] = laplace_local(abs(lam) / SQRT2, kw["a"] / SQRT2, cfg).value
        return out
    raise ValueError(f"unknown view {view!r}")


# ---------------------------------------------------------------------------
# the core algebraic series, numerically
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def _z_series_float():
    from .families import base_series
    z, _ = base_series("pm1", 40)
    return np.array([float(c) for c in z.c])


def z_numeric(t: float) -> float:
    """The core series of the first family on (-inf, 1/8), by radicals."""
    if t >= 0.125:
        raise ValueError("the closed form lives on t < 1/8")
    if abs(t) < 1e-3:
        c = _z_series_float()
        return float(np.polyval(c[::-1], t))
    s = math.sqrt(1.0 - 4.0 * t + math.sqrt(1.0 - 8.0 * t))
    return s * (s - SQRT2 * (1.0 - 8.0 * t) ** 0.25) / (4.0 * t)
