import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affinetrace.affine_weyl import ConvexPath
from affinetrace.cocenter import CocenterVector, e_class
from affinetrace.errors import IndexOutOfRange, NonLaurent
from affinetrace.hecke import QDIFF, EWord
from affinetrace.ring import IntLaurent1, Q1, Q2, RatFun2
from affinetrace.shuffle import probe_point, r_element
from affinetrace.tilde_a import (
    FormalElement, eval_cocenter, eval_shuffle, eval_shuffle_probe, reduce_single_rows,
    rel_a1_instance, rel_a2_instance, tor1_instance, tor2_instance, verify_suite,
)

ONE = RatFun2.coerce(1)
E = FormalElement.gen
q = IntLaurent1.q()


def test_rel_a1_examples():
    lhs, rhs = rel_a1_instance((1, 0), 1)
    assert lhs == E((1, 0)) - E((0, 1), coeff=Q1 * Q2)
    assert rhs == E((1,), (0,), coeff=1 - ONE * Q1)
    lhs, rhs = rel_a1_instance((0, 0), 1)
    assert lhs == E((0, 0)) - E((-1, 1), coeff=Q1 * Q2)
    assert rhs == E((0,), (0,), coeff=1 - ONE * Q1)
    for i in (0, 2):
        with pytest.raises(IndexOutOfRange):
            rel_a1_instance((0, 0), i)


def test_rel_a2_examples():
    assert rel_a2_instance(1, (0,))[1] == E((0, 1), coeff=ONE * Q2 - 1)
    assert rel_a2_instance(0, (0,))[1] == FormalElement()
    expected = (E((0, 1, 1)) + E((0, 0, 2))).scale(1 - ONE * Q2)
    assert rel_a2_instance(0, (0, 2))[1] == expected
    lhs, _ = rel_a2_instance(3, (1, -1))
    assert lhs == E((3,), (1, -1)) - E((1, -1), (3,))


def test_eval_shuffle_examples():
    for m in range(-2, 3):
        assert eval_shuffle(E((m,)))[1] == r_element((m,))
    for lhs, rhs in (rel_a1_instance((1, 0), 1), rel_a2_instance(1, (0,))):
        assert eval_shuffle(lhs) == eval_shuffle(rhs)


def test_eval_cocenter_examples():
    for m in range(-2, 3):
        assert eval_cocenter(E((m,))) == {1: CocenterVector(1, {ConvexPath(((1, m),)): 1})}
    lhs, rhs = rel_a2_instance(1, (0,))
    assert eval_cocenter(lhs - rhs) == {}
    lhs, rhs = rel_a1_instance((1, 0), 1)
    assert eval_cocenter(lhs - rhs) == {}


def test_eval_cocenter_hand_values():
    # ℰ_(1) ℰ_(0) - ℰ_(0) ℰ_(1) ↦ [y_1] - [y_2] and ℰ_(0,1) ↦ q^-1 [Omega]
    lhs, rhs = rel_a2_instance(1, (0,))
    omega = e_class(EWord(((0, 1),)))
    assert eval_cocenter(lhs)[2] == omega.scale(QDIFF)
    assert eval_cocenter(rhs)[2] == omega.scale((q ** 2 - 1) * q ** -1)


def test_eval_cocenter_rejects_non_laurent():
    with pytest.raises(NonLaurent):
        eval_cocenter(E((0,), coeff=RatFun2(1, 1 - Q2)))


def test_eval_cocenter_keeps_gradings_apart():
    x = E((0,)) + E((0, 0))
    out = eval_cocenter(x)
    assert sorted(out) == [1, 2]


rows = st.lists(st.integers(-1, 1), min_size=1, max_size=2).map(tuple)
words = st.lists(rows, min_size=1, max_size=2).map(lambda rs: E(*rs))


@settings(max_examples=20, deadline=None)
@given(words, words, st.integers(-2, 2))
def test_cocenter_evaluation_is_linear_and_multiplicative(x, y, c):
    scalar = ONE * c
    (wx,), (wy,) = x.terms, y.terms
    w = wx + wy
    scale = q ** sum(1 - len(f) for f in w.factors)
    assert eval_cocenter(x * y) == {w.strands: e_class(w).scale(scale)}
    lhs = eval_cocenter(x.scale(scalar) + y)
    sx, sy = eval_cocenter(x), eval_cocenter(y)
    expected = {}
    for n in set(sx) | set(sy):
        v = CocenterVector(n)
        if n in sx:
            v = v + sx[n].scale(c)
        if n in sy:
            v = v + sy[n]
        if v:
            expected[n] = v
    assert lhs == expected


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(-1, 1), min_size=1, max_size=2).map(tuple),
       st.lists(st.integers(-1, 1), min_size=1, max_size=2).map(tuple))
def test_shuffle_evaluation_is_multiplicative(a, b):
    if len(a) + len(b) > 4:
        return
    prod = eval_shuffle(E(a, b))[len(a) + len(b)]
    assert prod == eval_shuffle(E(a))[len(a)] * eval_shuffle(E(b))[len(b)]


def test_relation_suites_small():
    for relation, target, bounds in [
        ("rel-a1", "cocenter", dict(n_max=3, d_max=2)),
        ("rel-a2", "cocenter", dict(n_max=2, d_max=2, k_max=2)),
        ("rel-shuf", "shuffle", dict(n_max=2, d_max=1)),
        ("rel-a2", "shuffle", dict(n_max=2, d_max=1, k_max=1)),
        ("tor1", "shuffle", dict(d_max=2)),
        ("tor2", "shuffle", dict(d_max=1)),
    ]:
        report = verify_suite(relation, target, **bounds)
        assert report.instances > 0
        assert report.failures == [], (relation, target, report.failures[:1])


def test_rel_a2_shuffle_three_rows():
    report = verify_suite("rel-a2", "shuffle", n_max=3, d_max=1, k_max=1)
    assert report.instances == 3 * (3 + 9 + 27)
    assert report.ok


def test_suites_detect_a_wrong_relation():
    # drop the q1 q2 factor from rel a 1: both targets must notice
    lhs = E((1, 0)) - E((0, 1))
    rhs = E((1,), (0,), coeff=1 - ONE * Q1)
    assert not eval_shuffle(lhs - rhs).is_zero()
    lhs, rhs = rel_a2_instance(1, (0,))
    assert eval_cocenter(lhs - rhs.scale(2)) != {}


def test_toroidal_instances_are_not_empty():
    lhs, rhs = tor1_instance(0, 0)
    assert len(lhs.terms) == 4 and len(rhs.terms) == 4
    assert not eval_shuffle(lhs).is_zero()
    lhs, rhs = tor2_instance(0)
    assert lhs and not rhs


def test_probe_mode_agrees():
    ctx = probe_point(11)
    lhs, rhs = rel_a2_instance(1, (0, -1))
    assert eval_shuffle_probe(lhs - rhs, ctx) == {}
    wrong = eval_shuffle_probe(lhs - rhs.scale(2), ctx)
    assert wrong
    report = verify_suite("rel-a1", "shuffle", n_max=3, d_max=1, probe=ctx)
    assert report.mode == "probe" and report.ok


@pytest.mark.parametrize("n,m", [(1, -1), (1, 0), (1, 2), (2, -1), (2, 0), (2, 1), (3, -1), (3, 0), (3, 1)])
def test_reduce_single_rows(n, m):
    X = reduce_single_rows(n, m)
    assert all(len(f) == 1 for w in X.terms for f in w.factors)
    assert eval_shuffle(X)[n] == r_element((0,) * (n - 1) + (m,))


def test_reduce_base_case():
    assert reduce_single_rows(1, 5) == E((5,))


def test_formal_text_round_trip():
    rng = random.Random(5)
    for _ in range(5):
        x = FormalElement.one().scale(ONE * Q1)
        for _ in range(3):
            x = x + E(*[tuple(rng.randint(-2, 2) for _ in range(rng.randint(1, 2)))
                        for _ in range(rng.randint(1, 2))], coeff=RatFun2(1 + Q2, 1 - Q1))
        assert FormalElement.parse(str(x)) == x
    assert FormalElement.parse("0") == FormalElement()
