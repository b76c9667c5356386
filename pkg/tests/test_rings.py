import json

import pytest
from hypothesis import given, strategies as st

from embtrees.rings import QQ, UL, ULaurent, rat, rat_halves


def lau(*pairs):
    return ULaurent.from_pairs(pairs)


coeffs = st.integers(min_value=-50, max_value=50)
exps = st.integers(min_value=-6, max_value=6)
polys = st.lists(st.tuples(exps, coeffs), max_size=6).map(ULaurent.from_pairs)


def test_trim_and_zero():
    assert not ULaurent()
    assert not lau((3, 0), (-1, 0))
    p = lau((2, 5), (0, 0), (4, -1))
    assert p.off == 2 and p.c == [5, 0, -1]
    assert p.degree() == 4


def test_equality_mixes_int():
    assert ULaurent.const(7) == 7
    assert lau((0, 3), (1, 1)) != 3


@given(polys, polys)
def test_add_commutes(a, b):
    assert a + b == b + a


@given(polys, polys, polys)
def test_mul_distributes(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(polys)
def test_sub_self_is_zero(a):
    assert not (a - a)


@given(polys, st.integers(min_value=0, max_value=8))
def test_reversal_is_involutive_on_polynomials(a, n):
    # exponent e -> n - e twice returns the original
    assert a.reversed_scaled(n).reversed_scaled(n) == a


def test_monomial_inverse():
    m = ULaurent.monomial(rat(3, 2), 4)
    assert m * m.inverse() == ULaurent.const(1)
    with pytest.raises(ZeroDivisionError):
        lau((0, 1), (1, 1)).inverse()
    with pytest.raises(ZeroDivisionError):
        ULaurent().inverse()


def test_specializations():
    p = lau((0, 2), (1, -5), (3, 4))
    assert p.at_one() == 1
    assert p.at_zero() == 2
    q = lau((-1, 1), (0, 3))
    assert q.at_one() == 4
    with pytest.raises(ValueError):
        q.at_zero()
    assert lau((2, 9)).at_zero() == 0


def test_subs_float():
    p = lau((-1, 2), (1, 3))
    assert p.subs_float(2.0) == pytest.approx(1.0 + 6.0)


def test_rat_normalizes_to_int():
    assert rat(4, 2) == 2 and isinstance(rat(4, 2), int)
    assert rat_halves(rat(3, 6)) == (1, 2)
    assert rat_halves(7) == (7, 1)


def test_ring_json_roundtrip():
    for ring, vals in ((QQ, [3, rat(-7, 2)]),
                       (UL, [lau((-2, rat(1, 3)), (0, 5)), ULaurent()])):
        for v in vals:
            blob = json.loads(json.dumps(ring.coeff_to_json(v)))
            assert ring.coeff_from_json(blob) == v


def test_invert_requires_unit():
    with pytest.raises(ZeroDivisionError):
        QQ.invert(0)
    assert QQ.invert(rat(2, 3)) == rat(3, 2)
    assert QQ.invert(-1) == -1
