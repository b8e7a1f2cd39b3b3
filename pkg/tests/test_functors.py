"""Burnside arithmetic, table functors, and the axiom checkers."""

import json
import random

import pytest

from c2tambara.errors import CapabilityError, InputMismatchError, MembershipError
from c2tambara.functors import (
    FIXED, UNDERLYING, FiniteGreenFunctor, FiniteTambaraFunctor, burnside,
    burnside_mod, check_green_axioms, check_tambara_axioms, cyclic_ring,
    finite_functor_from_obj, finite_functor_to_obj, fixed_point_functor,
    one_element_green, one_element_tambara, product_ring,
)
from c2tambara.gsets import EMPTY, FREE_ORBIT, GMap, fold, quotient_map, dependent_product

B = burnside()


def test_burnside_closed_forms():
    t = B.t_class()
    assert B.mul(FIXED, t, t) == B.smul(FIXED, 2, t)  # t*t = 2t
    assert B.tr(1) == t
    assert B.norm(2) == B.add(FIXED, B.int_element(FIXED, 2), t)  # 2 + t
    assert B.norm(-1) == B.sub(FIXED, t, B.one(FIXED))  # t - 1
    assert B.res((3, 2)) == 7
    assert B.conj(5) == 5
    assert B.render(FIXED, (-1, 1)) == "-1 + t"
    assert B.render(FIXED, (0, 0)) == "0"


def test_burnside_norm_matches_coinduction():
    q = quotient_map()
    for m in range(7):
        h = fold(FREE_ORBIT, m) if m else GMap(EMPTY, FREE_ORBIT, {})
        coinduced, _ = dependent_product(h, q)
        assert B.norm(m) == (coinduced.fixed, coinduced.free)


def test_burnside_axioms_sampled():
    report = check_green_axioms(B, samples=200, seed=0)
    assert report.ok, report.render()
    report = check_tambara_axioms(B, samples=200, seed=0)
    assert report.ok, report.render()


def test_sampled_mode_is_reproducible():
    r1 = check_tambara_axioms(B, samples=50, seed=3)
    r2 = check_tambara_axioms(B, samples=50, seed=3)
    assert r1.checked == r2.checked and r1.entries == r2.entries


def test_exhaustive_mode_needs_enumeration():
    with pytest.raises(CapabilityError):
        check_green_axioms(B)


def test_one_element_functors_pass():
    assert check_green_axioms(one_element_green()).ok
    assert check_tambara_axioms(one_element_tambara()).ok


def test_broken_transfer_is_flagged():
    bm3 = burnside_mod(3)
    broken_tr = {u: bm3.tr(u) for u in bm3.elements(UNDERLYING)}
    broken_tr["1"] = bm3.zero(FIXED)
    broken = FiniteGreenFunctor(bm3.fixed_table, bm3.underlying_table,
                                {u: u for u in bm3.elements(UNDERLYING)},
                                {a: bm3.res(a) for a in bm3.elements(FIXED)},
                                broken_tr, name="broken transfer")
    report = check_green_axioms(broken)
    assert not report.ok
    laws = {v.law for v in report.entries}
    assert "res_tr[underlying]" in laws
    witness_entry = [v for v in report.entries if v.law == "res_tr[underlying]"]
    assert any(v.witness == ("1",) for v in witness_entry)


def test_broken_norm_is_flagged():
    fp2 = fixed_point_functor(cyclic_ring(2), {"0": "0", "1": "1"})
    bad_norm = {"0": "1", "1": "1"}  # N(0) != 0
    broken = FiniteTambaraFunctor(fp2.fixed_table, fp2.underlying_table,
                                  {"0": "0", "1": "1"}, {"0": "0", "1": "1"},
                                  {u: fp2.tr(u) for u in ("0", "1")}, bad_norm)
    report = check_tambara_axioms(broken)
    assert not report.ok
    assert {v.law for v in report.entries} & {"norm_mul[underlying]",
                                              "norm_of_sum[underlying]"}


def test_burnside_mod_carriers_and_green():
    bm2 = burnside_mod(2)
    assert len(bm2.elements(FIXED)) == 4
    assert len(bm2.elements(UNDERLYING)) == 2
    assert check_green_axioms(bm2).ok
    assert bm2.tr("1") == "t"
    assert bm2.res("1 + t") == "1"
    with pytest.raises(InputMismatchError):
        burnside_mod(1)


def test_burnside_mod_odd_is_tambara():
    for n in (3, 5):
        report = check_tambara_axioms(burnside_mod(n))
        assert report.ok, report.render()


def test_burnside_mod_even_norm_of_sum_fails():
    # The integer norm does not descend mod even n: N(2) = 2 + t while
    # N(0) = 0, so the representative-based norm must break norm-of-sum
    # (and, once products wrap past n, multiplicativity too).
    for n in (2, 4):
        report = check_tambara_axioms(burnside_mod(n))
        assert not report.ok
        laws = {v.law for v in report.entries}
        assert "norm_of_sum[underlying]" in laws
        assert laws <= {"norm_of_sum[underlying]", "norm_mul[underlying]"}
    report2 = check_tambara_axioms(burnside_mod(2))
    assert {v.law for v in report2.entries} == {"norm_of_sum[underlying]"}
    assert any(v.witness == ("1", "1") for v in report2.entries)


def test_burnside_mod_quotient_commutes():
    rng = random.Random(0)
    for n in (2, 3, 4):
        bm = burnside_mod(n)

        def q_f(a):
            return B.render(FIXED, (a[0] % n, a[1] % n))

        def q_u(m):
            return str(m % n)

        for _ in range(150):
            a = (rng.randint(-9, 9), rng.randint(-9, 9))
            b = (rng.randint(-9, 9), rng.randint(-9, 9))
            u = rng.randint(-9, 9)
            v = rng.randint(-9, 9)
            assert q_f(B.add(FIXED, a, b)) == bm.add(FIXED, q_f(a), q_f(b))
            assert q_f(B.mul(FIXED, a, b)) == bm.mul(FIXED, q_f(a), q_f(b))
            assert q_f(B.neg(FIXED, a)) == bm.neg(FIXED, q_f(a))
            assert q_u(B.conj(u)) == bm.conj(q_u(u))
            assert q_u(B.res(a)) == bm.res(q_f(a))
            assert q_f(B.tr(u)) == bm.tr(q_u(u))
            if n % 2 == 1:
                assert q_f(B.norm(u)) == bm.norm(q_u(u))
        if n % 2 == 0:
            # the obstruction: N(2) reduces to t, not to N(0) = 0
            assert q_f(B.norm(n)) != bm.norm(q_u(n))


def test_fixed_point_functor_examples():
    fp2 = fixed_point_functor(cyclic_ring(2), {"0": "0", "1": "1"})
    assert len(fp2.elements(FIXED)) == 2 and len(fp2.elements(UNDERLYING)) == 2
    assert all(fp2.tr(u) == "0" for u in fp2.elements(UNDERLYING))

    fp3 = fixed_point_functor(cyclic_ring(3), {str(i): str(i) for i in range(3)})
    for u in fp3.elements(UNDERLYING):
        assert fp3.tr(u) == fp3.add(FIXED, u, u)

    ring = product_ring(cyclic_ring(2), cyclic_ring(2))
    sigma = {"(0,0)": "(0,0)", "(1,1)": "(1,1)", "(0,1)": "(1,0)",
             "(1,0)": "(0,1)"}
    fpsw = fixed_point_functor(ring, sigma)
    assert sorted(fpsw.elements(FIXED)) == ["(0,0)", "(1,1)"]
    assert check_tambara_axioms(fpsw).ok


def test_fixed_point_functor_rejects_bad_sigma():
    with pytest.raises(MembershipError):
        fixed_point_functor(cyclic_ring(4), {"0": "0", "1": "2", "2": "1",
                                             "3": "3"})  # not multiplicative


def test_finite_functor_json_round_trip(bm3):
    obj = finite_functor_to_obj(bm3)
    again = finite_functor_from_obj(json.loads(json.dumps(obj)))
    assert isinstance(again, FiniteTambaraFunctor)
    assert check_tambara_axioms(again).ok
    assert again.elements(FIXED) == bm3.elements(FIXED)

    del obj["norm"]
    green = finite_functor_from_obj(obj)
    assert not green.has_norm

    with pytest.raises(InputMismatchError):
        finite_functor_from_obj({"fixed": {}})
    bad = finite_functor_to_obj(bm3)
    bad["fixed"]["add"][0][0] = "nonsense"
    with pytest.raises(InputMismatchError):
        finite_functor_from_obj(bad)


def test_report_rendering_sorted(bm3):
    report = check_green_axioms(bm3)
    assert "PASS" in report.render()
    assert report.checked > 0
