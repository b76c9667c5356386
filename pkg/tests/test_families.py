import json
import math
from pathlib import Path

import pytest

from embtrees import families as fm
from embtrees.rings import QQ, ULaurent, rat
from embtrees.series import Series

N = 12
ALL = ("pm1", "zpm1", "binary")

FIXTURE = Path(__file__).parent / "fixtures" / "pm1_order8.json"


def upairs(*pairs):
    return ULaurent.from_pairs(pairs)


def test_base_series_printed_heads():
    z, t = fm.base_series("pm1", 5)
    assert z.c == [0, 1, 4, 21, 124, 782]
    assert t.c == [1, 2, 8, 40, 224, 1344]
    _, t = fm.base_series("zpm1", 3)
    assert t.c == [1, 3, 18, 135]
    _, t = fm.base_series("binary", 4)
    assert t.c == [1, 1, 2, 5, 14]


def test_counts_match_closed_formulas():
    for name in ALL:
        fam = fm.get_family(name)
        _, t = fm.base_series(name, 10)
        assert [int(c) for c in t.c] == [fam.total_count(n) for n in range(11)]


def test_t0_printed_coefficients():
    assert fm.t_bounded("pm1", 0, 5).c == [1, 1, 3, 12, 56, 288]
    assert fm.t_bounded("zpm1", 0, 3).c == [1, 2, 9, 54]
    # binary bounded-by-0 head, from the enumeration oracle
    assert fm.t_bounded("binary", 0, 5).c == [1, 1, 1, 2, 4, 10]


def test_t_boundary_conditions():
    for name in ("pm1", "zpm1"):
        assert fm.t_bounded(name, -1, 6).is_zero()
    assert fm.t_bounded("binary", -1, 6) == Series.one(QQ, 6)


@pytest.mark.parametrize("name", ALL)
def test_dual_method_t(name):
    for j in range(-1, 7):
        a = fm.t_bounded(name, j, N, "product")
        b = fm.t_bounded(name, j, N, "recurrence")
        assert a.first_difference(b) is None, (name, j)


@pytest.mark.parametrize("name", ALL)
@pytest.mark.parametrize("kind", ["S", "R"])
def test_dual_method_su(name, kind):
    get = fm.s_label if kind == "S" else fm.r_atleast
    for j in range(-6, 7):
        a = get(name, j, N, "product")
        b = get(name, j, N, "recurrence")
        assert a.first_difference(b) is None, (name, kind, j)


def test_s0_head_pm1():
    s0 = fm.s_label("pm1", 0, 4)
    assert s0.c[0] == upairs((1, 1))            # u
    assert s0.c[1] == upairs((1, 2))            # 2ut


def test_r0_head_pm1():
    r0 = fm.r_atleast("pm1", 0, 4)
    assert r0.c[1] == upairs((1, 1), (2, 1))    # u + u^2


def test_binary_r_printed_heads():
    r0 = fm.r_atleast("binary", 0, 4)
    r1 = fm.r_atleast("binary", 1, 4)
    assert r0.c[1] == upairs((1, 1))
    assert r0.c[2] == upairs((1, 1), (2, 1))
    assert r0.c[3] == upairs((3, 2), (2, 2), (1, 1))
    assert r1.c[1] == upairs((0, 1))
    assert r1.c[3] == upairs((2, 1), (1, 2), (0, 2))
    # (1+u)(2u^2+u+4) expanded
    assert r1.c[4] == upairs((0, 4), (1, 5), (2, 3), (3, 2))


NU_PRINTED = {
    "pm1": [[(1, 1), (0, -1)], [(2, 2), (1, -2)],
            [(3, 6), (2, 1), (1, -7)], [(4, 23), (3, 13), (2, -4), (1, -32)]],
    "zpm1": [[(1, 1), (0, -1)], [(2, 3), (1, -3)],
             [(3, 14), (2, 1), (1, -15)], [(4, 83), (3, 34), (2, -13), (1, -104)]],
    "binary": [[], [(1, 1), (0, -1)], [(2, 1), (0, -1)],
               [(3, 2), (2, 1), (0, -3)]],
}


@pytest.mark.parametrize("name", ALL)
def test_nu_printed_expansions(name):
    nu = fm.nu_series(name, 6)
    want = [ULaurent.from_pairs(p) for p in NU_PRINTED[name]]
    assert nu.c[: len(want)] == want


def test_nu_closed_equals_fit():
    assert fm.nu_series("pm1", N, "closed") == fm.nu_series("pm1", N, "fit")
    with pytest.raises(ValueError):
        fm.nu_series("binary", 4, "closed")


@pytest.mark.parametrize("name", ALL)
def test_mu_nu_specializations(name):
    mu, nu = fm.mu_series(name, N), fm.nu_series(name, N)
    z, _ = fm.base_series(name, N)
    assert mu.at_u(1).is_zero() and nu.at_u(1).is_zero()
    target = -z if name == "binary" else Series.const(QQ, -1, N)
    assert mu.at_u(0) == target
    assert nu.at_u(0) == target


@pytest.mark.parametrize("name", ALL)
def test_su_specializations(name):
    for j in range(0, 5):
        s = fm.s_label(name, j, N)
        r = fm.r_atleast(name, j, N)
        _, t = fm.base_series(name, N)
        tj1 = fm.t_bounded(name, j - 1, N)
        assert s.at_u(1) == t and r.at_u(1) == t
        assert s.at_u(0) == tj1 and r.at_u(0) == tj1


@pytest.mark.parametrize("name", ALL)
def test_reflection_and_s_symmetry(name):
    for j in range(0, 5):
        assert fm.reflection_residual(name, j, N).is_zero()
    for j in range(1, 5):
        assert fm.s_label(name, j, N, "recurrence") == \
            fm.s_label(name, -j, N, "recurrence")


@pytest.mark.parametrize("name", ALL)
def test_invariant_chain(name):
    for j in (0, 1, 2):
        assert fm.invariant_residual(name, j, N).is_zero()


def test_invariant_s_and_limit_pm1():
    assert fm.invariant_residual("pm1", 1, N, "S").is_zero()
    comp = fm.computation("pm1", N)
    s = comp.chain("S")
    resid = fm.family_invariant("pm1", s[0], s[1]) - \
        fm.family_invariant("pm1", comp.tu, comp.tu)
    assert resid.is_zero()


@pytest.mark.parametrize("name", ALL)
def test_s0_relation(name):
    assert fm.s0_relation_residual(name, N).is_zero()


def test_u_exceed_valuation_and_probability():
    for name in ALL:
        for j in range(0, 5):
            v = fm.u_exceed(name, j, N).valuation()
            assert v is None or v >= j + 1
    # P(M_1 > 0) = 1/2 for the first family
    u0 = fm.u_exceed("pm1", 0, 4)
    assert rat(int(u0.coeff(1)), fm.get_family("pm1").total_count(1)) == rat(1, 2)


def test_u_exceed_kernel_identities():
    for j in range(0, 4):
        assert fm.u_exceed_kernel_residual(j, N).is_zero()
        assert fm.u_exceed_explicit_residual(j, N).is_zero()


def test_exact_max_moments():
    assert str(fm.exact_max_moment("pm1", 1, 1)) == "1/2"
    assert str(fm.exact_max_moment("pm1", 1, 2)) == "3/4"
    assert str(fm.exact_max_moment("pm1", 2, 1)) == "1/2"
    for k in (1, 2):
        for n in (4, 7):
            assert fm.exact_max_moment("pm1", k, n) == \
                fm.max_moment_kernel_route(k, n)


def test_exact_max_moment_order_sharing():
    direct = fm.exact_max_moment("pm1", 1, 5)
    shared = fm.exact_max_moment("pm1", 1, 5, order=9)
    assert direct == shared


def test_eq17_style_residual_is_zero():
    assert fm.consistency_residual_pm1(8).is_zero()


def test_label_set_roundtrip_and_fixture():
    bundle = fm.build_label_set("pm1", 8, jmax=3)
    blob = json.loads(json.dumps(bundle.to_json(), sort_keys=True))
    back = fm.LabelSeriesSet.from_json(blob)
    assert back.t_bounded[2] == bundle.t_bounded[2]
    assert back.nu == bundle.nu
    # golden fixture regression
    with open(FIXTURE) as fh:
        golden = json.load(fh)
    assert bundle.to_json() == golden


def test_method_disagreement_reports_order():
    a = fm.t_bounded("pm1", 1, 8)
    b = fm.t_bounded("pm1", 2, 8)
    assert a.first_difference(b) == 2  # differ first where a label-2 tree exists


def test_unknown_family_rejected():
    with pytest.raises(ValueError):
        fm.get_family("ternary")
    with pytest.raises(ValueError):
        fm.t_bounded("pm1", -2, 4)
    with pytest.raises(ValueError):
        fm.s_label("pm1", 0, 4, method="magic")
