"""Bispan generators, iso-class equality (cross-checked against a
brute-force isomorphism search), composition laws, and evaluation."""

import json
import random

import pytest

from conftest import (
    SHAPES_3, SHAPES_4, brute_force_bispan_equal, random_bispan,
    random_burnside_tuple, random_composable_triple, random_gmap,
    random_table_tuple,
)
from c2tambara.bispans import (
    Bispan, ElementTuple, FormalSum, bispan_from_obj, bispan_to_obj, compose,
    element_tuple_from_obj, element_tuple_to_obj, evaluate, identity_bispan,
    make_N, make_R, make_T, product,
)
from c2tambara.errors import CapabilityError, InputMismatchError, MembershipError
from c2tambara.free import FREE_GREEN_UNDERLYING, FREE_TAMBARA_UNDERLYING
from c2tambara.functors import FIXED, UNDERLYING, burnside
from c2tambara.gsets import (
    FREE_ORBIT, GMap, GSet, IndexingSystem, fold, identity_map, is_member,
    quotient_map,
)

B = burnside()
Q = quotient_map()
COMPLETE = IndexingSystem.COMPLETE
TRIVIAL = IndexingSystem.TRIVIAL
TO_POINT = GMap(FREE_ORBIT, GSet(1, 0), {("o", 0, 0): ("f", 0),
                                         ("o", 0, 1): ("f", 0)})
GAMMA = GMap(FREE_ORBIT, FREE_ORBIT, {("o", 0, 0): ("o", 0, 1),
                                      ("o", 0, 1): ("o", 0, 0)})


def test_generators():
    t_q = make_T(Q)
    assert (t_q.S, t_q.U, t_q.V, t_q.T) == (FREE_ORBIT, FREE_ORBIT,
                                            FREE_ORBIT, GSet(1, 0))
    r_id = make_R(identity_map(GSet(2, 1)))
    assert r_id == identity_bispan(GSet(2, 1))
    n_fold = make_N(fold(FREE_ORBIT, 2), TRIVIAL)
    assert (n_fold.U, n_fold.V) == (GSet(0, 2), FREE_ORBIT)


def test_make_n_requires_membership():
    with pytest.raises(MembershipError):
        make_N(Q, TRIVIAL)
    make_N(Q, COMPLETE)


def test_equality_examples():
    ident = identity_map(FREE_ORBIT)
    b1 = Bispan(TO_POINT, ident, Q, COMPLETE)
    b2 = Bispan(TO_POINT, GAMMA, Q, COMPLETE)
    assert b1 == b2  # x and conj(x) agree once the target is a point

    c1 = Bispan(ident, ident, ident, COMPLETE)
    c2 = Bispan(ident, GAMMA, ident, COMPLETE)
    assert c1 != c2  # x versus conj(x) at the free orbit
    assert c1 == c1


def test_equals_matches_brute_force():
    rng = random.Random(9)
    shapes = [s for s in SHAPES_3 if s.size]
    agree = 0
    while agree < 120:
        s, t = rng.choice(shapes), rng.choice(shapes)
        ix = rng.choice((TRIVIAL, COMPLETE))
        try:
            p = random_bispan(rng, s, t, ix, shapes)
            q = random_bispan(rng, s, t, ix, shapes)
        except RuntimeError:
            continue
        fast = p == q
        slow = brute_force_bispan_equal(p, q)
        assert fast == slow, (p, q)
        # also compare p against a relabelled copy of itself
        assert brute_force_bispan_equal(p, Bispan(p.f, p.g, p.h, ix))
        agree += 1


def test_equality_is_equivalence_and_canonical_form_stable():
    rng = random.Random(13)
    spans = []
    while len(spans) < 30:
        s, t = rng.choice(SHAPES_3), rng.choice(SHAPES_3)
        if not (s.size and t.size):
            continue
        spans.append(random_bispan(rng, s, t, COMPLETE, SHAPES_3))
    for p in spans:
        again = Bispan(p.f, p.g, p.h, p.indexing)
        assert again == p
        assert (again.f, again.g, again.h) == (p.f, p.g, p.h)  # idempotent
    for p in spans:
        for q in spans:
            assert (p == q) == (q == p)


def test_compose_norm_of_transfer_example():
    comp = compose(make_N(Q, COMPLETE), make_T(fold(FREE_ORBIT, 2)))
    out = evaluate(comp, B, ElementTuple(comp.S, (), (1, 1)))
    assert out.fixed[0] == B.norm(2) == (2, 1)  # N(1+1) = 2 + t


def test_compose_identity_laws():
    rng = random.Random(21)
    for _ in range(15):
        s, t = rng.choice(SHAPES_4), rng.choice(SHAPES_4)
        if not (s.size and t.size):
            continue
        p = random_bispan(rng, s, t, COMPLETE)
        assert compose(identity_bispan(t), p) == p
        assert compose(p, identity_bispan(s)) == p


def test_compose_res_tr_is_sum_with_conjugate():
    comp = compose(make_R(Q), make_T(Q))
    x = FREE_TAMBARA_UNDERLYING.generator()
    out = evaluate(comp, FREE_TAMBARA_UNDERLYING,
                   ElementTuple(FREE_ORBIT, (), (x,)))
    expected = FREE_TAMBARA_UNDERLYING.add(
        UNDERLYING, x, FREE_TAMBARA_UNDERLYING.conj(x))
    assert out.orbits[0] == expected
    out2 = evaluate(comp, B, ElementTuple(FREE_ORBIT, (), (5,)))
    assert out2.orbits[0] == 10


def test_compose_rejects_mismatch():
    with pytest.raises(InputMismatchError):
        compose(make_T(Q), make_T(Q))
    with pytest.raises(InputMismatchError):
        compose(make_N(Q, COMPLETE), make_T(fold(FREE_ORBIT, 2), TRIVIAL))


def test_product_examples():
    pt = GSet(1, 0)
    id_pt = identity_bispan(pt)
    two = product(id_pt, id_pt)
    assert two == identity_bispan(GSet(2, 0))

    empty = identity_bispan(GSet(0, 0))
    p = make_T(Q)
    assert product(p, empty) == p

    both = product(make_T(Q), make_N(Q, COMPLETE))
    assert (both.S, both.T) == (GSet(0, 2), GSet(2, 0))
    out = evaluate(both, B, ElementTuple(GSet(0, 2), (), (1, 3)))
    assert out.fixed == (B.tr(1), B.norm(3))

    with pytest.raises(MembershipError):
        product(make_T(Q, TRIVIAL), make_N(Q, COMPLETE))


def test_evaluate_examples():
    norm_res = Bispan(TO_POINT, TO_POINT, identity_map(GSet(1, 0)), COMPLETE)
    one = ElementTuple(GSet(1, 0), ((1, 0),), ())
    assert evaluate(norm_res, B, one).fixed[0] == (1, 0)

    t_in = ElementTuple(GSet(1, 0), ((0, 1),), ())
    assert evaluate(norm_res, B, t_in).fixed[0] == B.norm(2)  # N(res t) = 2+t

    gen = evaluate(make_T(Q), B, ElementTuple(FREE_ORBIT, (), (1,)))
    assert gen.fixed[0] == (0, 1)  # tr(1) = t


def test_evaluate_capability_split(bm2):
    green = bm2.as_green()
    trivial_span = make_T(Q, TRIVIAL)
    evaluate(trivial_span, green, ElementTuple(FREE_ORBIT, (), ("1",)))
    with pytest.raises(CapabilityError):
        evaluate(make_T(Q, COMPLETE), green,
                 ElementTuple(FREE_ORBIT, (), ("1",)))


def test_conjugate_representative_convention():
    # reading the orbit through its other representative conjugates the value
    span = Bispan(GAMMA, identity_map(FREE_ORBIT), identity_map(FREE_ORBIT),
                  COMPLETE)
    x = FREE_TAMBARA_UNDERLYING.generator()
    out = evaluate(span, FREE_TAMBARA_UNDERLYING,
                   ElementTuple(FREE_ORBIT, (), (x,)))
    assert out.orbits[0] == FREE_TAMBARA_UNDERLYING.conj(x)


def test_associativity_small():
    rng = random.Random(31)
    for ix in (TRIVIAL, COMPLETE):
        for _ in range(40):
            p, q, r = random_composable_triple(rng, ix, SHAPES_3)
            assert compose(compose(r, q), p) == compose(r, compose(q, p))


def test_functoriality_of_evaluation(bm3, fp_swap):
    rng = random.Random(41)
    functors = [(B, random_burnside_tuple), (bm3, random_table_tuple),
                (fp_swap, random_table_tuple)]
    for _ in range(25):
        ix = rng.choice((TRIVIAL, COMPLETE))
        p, q, _ = random_composable_triple(rng, ix, SHAPES_3)
        comp = compose(q, p)
        for functor, make in functors:
            if make is random_burnside_tuple:
                v = make(rng, p.S)
            else:
                v = make(rng, functor, p.S)
            via_comp = evaluate(comp, functor, v)
            via_steps = evaluate(q, functor, evaluate(p, functor, v))
            assert via_comp == via_steps


def test_compose_output_stays_in_system():
    rng = random.Random(51)
    for ix in (TRIVIAL, COMPLETE):
        for _ in range(30):
            p, q, _ = random_composable_triple(rng, ix, SHAPES_3)
            comp = compose(q, p)
            assert is_member(comp.g, ix)


def test_formal_sum_dedups_iso_classes():
    ident = identity_map(FREE_ORBIT)
    b1 = Bispan(TO_POINT, ident, Q, COMPLETE)
    b2 = Bispan(TO_POINT, GAMMA, Q, COMPLETE)  # same iso class as b1
    s = FormalSum.of(b1) + FormalSum.of(b2)
    assert len(s) == 1 and s.terms[0][1] == 2
    assert len(s - s) == 0
    assert (s + (-s)) == FormalSum(b1.S, b1.T, [])
    with pytest.raises(InputMismatchError):
        FormalSum.of(b1) + FormalSum.of(identity_bispan(GSet(2, 0)))


def test_bispan_json_round_trip():
    rng = random.Random(61)
    for _ in range(15):
        s, t = rng.choice(SHAPES_4), rng.choice(SHAPES_4)
        if not (s.size and t.size):
            continue
        p = random_bispan(rng, s, t, rng.choice((TRIVIAL, COMPLETE)))
        obj = json.loads(json.dumps(bispan_to_obj(p)))
        assert bispan_from_obj(obj) == p
    bad = bispan_to_obj(make_T(Q))
    bad["indexing"] = "partial"
    with pytest.raises(InputMismatchError):
        bispan_from_obj(bad)
    bad = bispan_to_obj(make_T(Q))
    bad["S"] = {"fixed": 5, "free": 0}
    with pytest.raises(InputMismatchError):
        bispan_from_obj(bad)


def test_element_tuple_json():
    span = make_T(Q)
    values = ElementTuple(FREE_ORBIT, (), (4,))
    obj = element_tuple_to_obj(values, B)
    assert element_tuple_from_obj(obj, FREE_ORBIT, B) == values
    with pytest.raises(InputMismatchError):
        element_tuple_from_obj({"fixed": [], "orbits": []}, GSet(1, 0), B)
