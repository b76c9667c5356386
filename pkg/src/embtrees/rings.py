"""Exact coefficient rings: arbitrary-precision rationals and Laurent polynomials in u.

Two coefficient domains are supported by :mod:`embtrees.series`:

* plain rationals (Python ints mixed with ``gmpy2.mpq``/``fractions.Fraction``),
* Laurent polynomials in the marker ``u`` with rational coefficients
  (:class:`ULaurent`), which may carry negative powers of ``u`` transiently.

Arithmetic is exact everywhere; floats never enter these types.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as RAT
except ImportError:  # pragma: no cover - gmpy2 is a normal dependency
    from fractions import Fraction as RAT


def rat(num, den=1):
    """Exact rational; collapses to a plain int when the value is integral."""
    q = RAT(num, den)
    if q.denominator == 1:
        return int(q.numerator)
    return q


def rat_halves(x):
    """(numerator, denominator) of an int or rational, as Python ints."""
    if isinstance(x, int):
        return x, 1
    return int(x.numerator), int(x.denominator)


class ULaurent:
    """Laurent polynomial in u: a dense coefficient run starting at exponent `off`.

    The run never has leading or trailing zeros; the zero polynomial is the
    empty run. Coefficients are ints or exact rationals.
    """

    __slots__ = ("off", "c")

    def __init__(self, off=0, c=()):
        self.off = off
        self.c = list(c)

    # -- construction -----------------------------------------------------

    @staticmethod
    def const(value):
        return ULaurent(0, [value]) if value else ULaurent()

    @staticmethod
    def monomial(value, exp):
        return ULaurent(exp, [value]) if value else ULaurent()

    @staticmethod
    def from_pairs(pairs):
        pairs = [(e, v) for e, v in pairs if v]
        if not pairs:
            return ULaurent()
        lo = min(e for e, _ in pairs)
        hi = max(e for e, _ in pairs)
        c = [0] * (hi - lo + 1)
        for e, v in pairs:
            c[e - lo] += v
        return _trim(lo, c)

    def pairs(self):
        return [(self.off + i, v) for i, v in enumerate(self.c) if v]

    # -- predicates --------------------------------------------------------

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, ULaurent):
            if not self.c or not other.c:
                return not self.c and not other.c
            return self.off == other.off and self.c == other.c
        if isinstance(other, (int, RAT)):
            return self == ULaurent.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.off, tuple(self.c)))

    def is_polynomial(self):
        return not self.c or self.off >= 0

    def degree(self):
        """Largest exponent with a nonzero coefficient; None for zero."""
        return self.off + len(self.c) - 1 if self.c else None

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ULaurent):
            return NotImplemented
        if not self.c:
            return other
        if not other.c:
            return self
        lo = min(self.off, other.off)
        hi = max(self.off + len(self.c), other.off + len(other.c))
        c = [0] * (hi - lo)
        for i, v in enumerate(self.c):
            c[self.off - lo + i] = v
        for i, v in enumerate(other.c):
            c[other.off - lo + i] += v
        return _trim(lo, c)

    def __neg__(self):
        return ULaurent(self.off, [-v for v in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ULaurent):
            return NotImplemented
        if not self.c or not other.c:
            return ULaurent()
        from .kernels import poly_mul
        return _trim(self.off + other.off, poly_mul(self.c, other.c))

    def scaled(self, k):
        if not k:
            return ULaurent()
        return ULaurent(self.off, [v * k for v in self.c])

    def inverse(self):
        """Inverse of a monomial c*u^e; anything else is not a unit here."""
        nz = self.pairs()
        if len(nz) != 1:
            raise ZeroDivisionError("ULaurent is invertible only as a monomial")
        e, v = nz[0]
        num, den = rat_halves(v)
        return ULaurent.monomial(rat(den, num), -e)

    # -- specializations -----------------------------------------------------

    def at_one(self):
        """Value at u = 1 (exact)."""
        s = 0
        for v in self.c:
            s += v
        return s

    def at_zero(self):
        """Value at u = 0; requires a genuine polynomial."""
        if not self.c:
            return 0
        if self.off < 0:
            raise ValueError("negative u-power survives at u = 0")
        return self.c[0] if self.off == 0 else 0

    def subs_float(self, u):
        """Float value at a real u (u != 0 when negative powers are present)."""
        return sum(float(v) * u ** e for e, v in self.pairs())

    def reversed_scaled(self, n):
        """u^n * self(1/u): exponent e becomes n - e."""
        if not self.c:
            return ULaurent()
        top = n - self.off - (len(self.c) - 1)
        return _trim(top, self.c[::-1])

    def __repr__(self):
        if not self.c:
            return "0"
        return " + ".join(f"{v}*u^{e}" if e else f"{v}" for e, v in self.pairs())


def _trim(off, c):
    i, j = 0, len(c)
    while i < j and not c[i]:
        i += 1
    while j > i and not c[j - 1]:
        j -= 1
    if i == j:
        return ULaurent()
    return ULaurent(off + i, c[i:j])


U_ZERO = ULaurent()
U_ONE = ULaurent.const(1)
U = ULaurent.monomial(1, 1)
U_MINUS_ONE = ULaurent.from_pairs([(1, 1), (0, -1)])  # u - 1


class RationalRing:
    """Ring tag for plain rational coefficients (ints and exact rationals)."""

    name = "rational"

    zero = 0
    one = 1

    @staticmethod
    def from_int(k):
        return k

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def invert(a):
        if not a:
            raise ZeroDivisionError("constant term is not a unit")
        num, den = rat_halves(a)
        return rat(den, num)

    @staticmethod
    def halve(a):
        num, den = rat_halves(a)
        return rat(num, 2 * den)

    @staticmethod
    def coeff_to_json(a):
        num, den = rat_halves(a)
        return {"num": str(num), "den": str(den)}

    @staticmethod
    def coeff_from_json(obj):
        return rat(int(obj["num"]), int(obj["den"]))


class ULaurentRing:
    """Ring tag for Laurent-polynomial coefficients in u."""

    name = "ulaurent"

    zero = U_ZERO
    one = U_ONE

    @staticmethod
    def from_int(k):
        return ULaurent.const(k)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def invert(a):
        return a.inverse()

    @staticmethod
    def halve(a):
        return ULaurent(a.off, [RationalRing.halve(v) for v in a.c])

    @staticmethod
    def coeff_to_json(a):
        out = []
        for e, v in a.pairs():
            num, den = rat_halves(v)
            out.append({"exp": e, "num": str(num), "den": str(den)})
        return out

    @staticmethod
    def coeff_from_json(obj):
        return ULaurent.from_pairs(
            (item["exp"], rat(int(item["num"]), int(item["den"]))) for item in obj
        )


QQ = RationalRing()
UL = ULaurentRing()

RINGS = {QQ.name: QQ, UL.name: UL}
