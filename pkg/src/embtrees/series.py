"""Truncated formal power series in t over exact coefficient rings.

A :class:`Series` holds coefficients c_0..c_N of a power series modulo
t^{N+1}. Coefficients live either in the rational ring (:data:`rings.QQ`)
or in the Laurent ring in u (:data:`rings.UL`); the two never mix silently.
All arithmetic is exact and correct modulo t^{N+1}.
"""

from __future__ import annotations

from . import kernels
from .rings import QQ, RINGS, UL, ULaurent, _trim


class RingMismatchError(TypeError):
    pass


class OrderMismatchError(ValueError):
    pass


class NonContractingError(ValueError):
    """Raised when a fixed-point map fails to gain one t-order per sweep."""


class Series:
    __slots__ = ("ring", "c")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.c = list(coeffs)
        if not self.c:
            raise ValueError("a series needs at least the order-0 coefficient")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zeros(ring, order):
        return Series(ring, [ring.zero] * (order + 1))

    @staticmethod
    def const(ring, value, order):
        c = [ring.zero] * (order + 1)
        c[0] = value
        return Series(ring, c)

    @staticmethod
    def one(ring, order):
        return Series.const(ring, ring.one, order)

    @staticmethod
    def from_coeffs(ring, coeffs, order):
        """Polynomial prefix padded with zeros up to `order`."""
        c = list(coeffs[: order + 1])
        c += [ring.zero] * (order + 1 - len(c))
        return Series(ring, c)

    # -- basics ------------------------------------------------------------

    @property
    def order(self):
        return len(self.c) - 1

    def coeff(self, n):
        if n > self.order:
            raise OrderMismatchError(f"coefficient {n} beyond truncation {self.order}")
        return self.c[n]

    def is_zero(self):
        return all(not v for v in self.c)

    def valuation(self):
        """Smallest n with a nonzero coefficient, or None for the zero series."""
        for n, v in enumerate(self.c):
            if v:
                return n
        return None

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.ring is other.ring and self.order == other.order and \
            all(a == b for a, b in zip(self.c, other.c))

    def first_difference(self, other):
        """Order of the first differing coefficient, or None when equal."""
        self._check(other)
        for n, (a, b) in enumerate(zip(self.c, other.c)):
            if a != b:
                return n
        return None

    def _check(self, other):
        if self.ring is not other.ring:
            raise RingMismatchError("series over different coefficient rings")
        if self.order != other.order:
            raise OrderMismatchError("series with different truncation orders")

    # -- linear ops ----------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        add = self.ring.add
        return Series(self.ring, [add(a, b) for a, b in zip(self.c, other.c)])

    def __sub__(self, other):
        self._check(other)
        sub = self.ring.sub
        return Series(self.ring, [sub(a, b) for a, b in zip(self.c, other.c)])

    def __neg__(self):
        neg = self.ring.neg
        return Series(self.ring, [neg(a) for a in self.c])

    def scale(self, value):
        """Multiply by a single ring element."""
        mul = self.ring.mul
        return Series(self.ring, [mul(a, value) for a in self.c])

    def shift_up(self, k=1):
        """Multiply by t^k at fixed truncation order (top coefficients drop off)."""
        z = self.ring.zero
        return Series(self.ring, [z] * k + self.c[: len(self.c) - k])

    def divide_t(self, k=1):
        """Exact division by t^k; the result has truncation order N-k."""
        if any(self.c[i] for i in range(min(k, len(self.c)))):
            raise ValueError(f"series has valuation < {k}, cannot divide by t^{k}")
        if k > self.order:
            raise OrderMismatchError("division by t^k exceeds truncation order")
        return Series(self.ring, self.c[k:])

    def truncate(self, order):
        if order > self.order:
            raise OrderMismatchError("cannot extend a truncated series")
        return Series(self.ring, self.c[: order + 1])

    # -- multiplicative ops ----------------------------------------------------

    def __mul__(self, other):
        self._check(other)
        n = self.order
        if self.ring is QQ:
            out = kernels.poly_mul_trunc(self.c, other.c, n)
            out += [0] * (n + 1 - len(out))
            return Series(QQ, out)
        aoffs = [x.off for x in self.c]
        acs = [x.c for x in self.c]
        boffs = [x.off for x in other.c]
        bcs = [x.c for x in other.c]
        out = []
        for m in range(n + 1):
            off, run = kernels.uconv_at(aoffs, acs, boffs, bcs, m)
            out.append(_trim(off, run))
        return Series(UL, out)

    def square(self):
        return self * self

    def pow(self, k):
        result = Series.one(self.ring, self.order)
        base = self
        while k > 0:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def reciprocal(self):
        """Series b with self*b = 1 mod t^{N+1}; constant term must be a unit."""
        ring = self.ring
        inv0 = ring.invert(self.c[0])
        n = self.order
        b = [inv0]
        tail = self.c[1:]
        if ring is QQ:
            for m in range(1, n + 1):
                s = kernels.conv_at(tail, b, m - 1)
                b.append(ring.neg(ring.mul(inv0, s)))
        else:
            toffs = [x.off for x in tail]
            tcs = [x.c for x in tail]
            boffs = [inv0.off]
            bcs = [inv0.c]
            for m in range(1, n + 1):
                off, run = kernels.uconv_at(toffs, tcs, boffs, bcs, m - 1)
                s = _trim(off, run)
                v = ring.neg(ring.mul(inv0, s))
                b.append(v)
                boffs.append(v.off)
                bcs.append(v.c)
        return Series(ring, b)

    def sqrt_unit(self):
        """Square root with constant term 1 (requires c_0 = 1)."""
        ring = self.ring
        if self.c[0] != ring.one:
            raise ValueError("sqrt requires constant term 1")
        n = self.order
        b = [ring.one]
        for m in range(1, n + 1):
            # 2 b_m = a_m - sum_{k=1}^{m-1} b_k b_{m-k}
            if ring is QQ:
                s = kernels.conv_at(b[1:], b[1:], m - 2) if m >= 2 else 0
            else:
                boffs = [x.off for x in b[1:]]
                bcs = [x.c for x in b[1:]]
                off, run = kernels.uconv_at(boffs, bcs, boffs, bcs, m - 2) if m >= 2 \
                    else (0, [])
                s = _trim(off, run)
            b.append(ring.halve(ring.sub(self.c[m], s)))
        return Series(ring, b)

    # -- u-ring specific -----------------------------------------------------

    def tilde(self):
        """A(t, u) -> A(tu, 1/u): coefficient c_n(u) becomes u^n c_n(1/u)."""
        if self.ring is not UL:
            raise RingMismatchError("tilde is defined on u-coefficient series")
        return Series(UL, [v.reversed_scaled(n) for n, v in enumerate(self.c)])

    def lift_u(self):
        """Reinterpret a rational series in the Laurent ring (u-free coefficients)."""
        if self.ring is not QQ:
            raise RingMismatchError("lift_u starts from a rational series")
        return Series(UL, [ULaurent.const(v) for v in self.c])

    def subs_tu(self):
        """A(t) -> A(tu) for a rational series: coefficient c_n becomes c_n u^n."""
        if self.ring is not QQ:
            raise RingMismatchError("subs_tu starts from a rational series")
        return Series(UL, [ULaurent.monomial(v, n) for n, v in enumerate(self.c)])

    def at_u(self, which):
        """Specialize u to 1 or 0, producing a rational series."""
        if self.ring is not UL:
            raise RingMismatchError("u-specialization needs u coefficients")
        if which == 1:
            return Series(QQ, [v.at_one() for v in self.c])
        if which == 0:
            return Series(QQ, [v.at_zero() for v in self.c])
        raise ValueError("only u=1 and u=0 are exact specializations")

    def assert_polynomial_coeffs(self):
        for n, v in enumerate(self.c):
            if isinstance(v, ULaurent) and not v.is_polynomial():
                raise ValueError(f"coefficient of t^{n} has negative u-powers")

    # -- numeric evaluation -----------------------------------------------------

    def eval_float(self, t, u=None):
        total = 0.0
        tp = 1.0
        for v in self.c:
            if self.ring is UL:
                total += tp * v.subs_float(u if u is not None else 1.0)
            else:
                total += tp * float(v)
            tp *= t
        return total

    # -- serialization ------------------------------------------------------------

    def to_json(self):
        enc = self.ring.coeff_to_json
        return {"ring": self.ring.name, "coeffs": [enc(v) for v in self.c]}

    @staticmethod
    def from_json(obj):
        ring = RINGS[obj["ring"]]
        dec = ring.coeff_from_json
        return Series(ring, [dec(v) for v in obj["coeffs"]])

    def __repr__(self):
        shown = ", ".join(repr(v) for v in self.c[:6])
        more = ", ..." if self.order > 5 else ""
        return f"Series[{self.ring.name}, N={self.order}]({shown}{more})"


def solve_fixed_point(f, ring, order, const_term):
    """Unique X = F(X) mod t^{N+1} for a formally contracting map F.

    Repeated substitution from the caller-supplied order-0 value gains one
    exact order per sweep; the gain is verified sweep by sweep and the final
    residual X - F(X) is checked to vanish identically.
    """
    x = Series.const(ring, const_term, order)
    for sweep in range(1, order + 2):
        x_new = f(x)
        if x_new.order != order:
            raise OrderMismatchError("fixed-point map changed the truncation order")
        delta = x_new - x
        v = delta.valuation()
        if v is None:
            x = x_new
            break
        if v < sweep:
            raise NonContractingError(
                f"sweep {sweep} only corrected order {v}; map is not contracting"
            )
        x = x_new
    residual = x - f(x)
    if not residual.is_zero():
        raise NonContractingError("fixed point did not converge within N+1 sweeps")
    return x
