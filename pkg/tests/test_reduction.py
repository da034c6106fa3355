import json
import random

import pytest

from uqtwist.dp import apply_word, dp_word_for_root
from uqtwist.engine import AlgebraElement, build_engine
from uqtwist.groupalg import enumerate_alternating, form_to_twist
from uqtwist.reduction import (COMPATIBLE, DISTINCT, EQUAL, FactoredTwist, alt_injectivity_check,
                               compatible_pairs, kappa_restriction_invariant, killing_pullback,
                               random_twist, reduce_twist, replay_check)
from uqtwist.rootdata import build_root_datum
from uqtwist.scalars import CycScalar
from uqtwist.tensor import HopfFrame, TensorElement


@pytest.fixture(scope="module")
def a1():
    return build_engine("A1", 5)


@pytest.fixture(scope="module")
def a2():
    return build_engine("A2", 5)


def test_group_twist_is_already_normal(a2):
    M = ((0, 2), (3, 0))
    nf = reduce_twist(form_to_twist(M, a2))
    assert nf.alt_form == M and nf.c == {} and len(nf.log) == 0


@pytest.mark.parametrize("lam", [1, 3, -2])
def test_single_dp_word(a1, lam):
    J = apply_word(HopfFrame(a1), dp_word_for_root(a1, 0, lam), TensorElement.one(a1))
    nf = reduce_twist(J)
    assert nf.alt_form == ((0,),)
    assert nf.c == {0: CycScalar.from_int(5, lam)}
    assert len(nf.log) >= 1 and nf.obstructions == [(5,)]
    assert replay_check(nf, J, a1)


def test_small_unit_gauge_has_no_unipotent_part(a2):
    M = ((0, 1), (4, 0))
    u = AlgebraElement.one(a2) + AlgebraElement.E(a2, 1).scale(a2.zeta(3))
    F = HopfFrame(a2, M).gauge(u, TensorElement.one(a2))
    nf = reduce_twist(FactoredTwist(M, F), a2)
    assert nf.alt_form == M and nf.c == {}
    assert replay_check(nf, FactoredTwist(M, F), a2)


def test_words_over_distinct_roots(a2):
    fr = HopfFrame(a2)
    J = apply_word(fr, dp_word_for_root(a2, 0, 2), TensorElement.one(a2))
    J = apply_word(fr, dp_word_for_root(a2, 2, 1), J)
    nf = reduce_twist(J)
    assert set(nf.c) <= {0, 1, 2}
    assert nf.c[0] == CycScalar.from_int(5, 2) and nf.c[2] == CycScalar.from_int(5, 1)
    assert replay_check(nf, J, a2)


@pytest.mark.parametrize("seed", range(4))
def test_a1_round_trip_with_dense_group_units(a1, seed):
    rt = random_twist(a1, ((0,),), seed, dense_group=True)
    J = rt.twist.expand()
    nf = reduce_twist(J)
    assert nf.alt_form == ((0,),)
    assert replay_check(nf, J, a1)
    assert sum(nf.c.values(), CycScalar.zero(5)) == sum((w.lam for w in rt.words), CycScalar.zero(5))


def test_a2_factored_round_trip(a2):
    M = ((0, 4), (1, 0))
    rt = random_twist(a2, M, 12, max_words=2)
    nf = reduce_twist(rt.twist, a2)
    assert nf.alt_form == M
    assert replay_check(nf, rt.twist, a2)


def test_form_is_read_from_the_twist_not_the_label(a2):
    M = ((0, 2), (3, 0))
    F = apply_word(HopfFrame(a2, M), dp_word_for_root(a2, 0, 1), TensorElement.one(a2))
    relabeled = FactoredTwist(((0, 0), (0, 0)), FactoredTwist(M, F).expand())
    nf = reduce_twist(relabeled, a2)
    assert nf.alt_form == M and nf.c == {0: CycScalar.from_int(5, 1)}
    assert replay_check(nf, relabeled, a2)


def test_normal_form_json(a1):
    J = apply_word(HopfFrame(a1), dp_word_for_root(a1, 0, 1), TensorElement.one(a1))
    out = reduce_twist(J).to_json(a1)
    assert json.loads(json.dumps(out))["alt_form"] == [[0]]


def test_alt_injectivity_a1(a1):
    assert alt_injectivity_check(a1, seeds=(0, 1))


def test_kappa_invariant():
    rd = build_root_datum("A2", 5)
    forms = enumerate_alternating(2, 5)
    assert kappa_restriction_invariant(forms[1], forms[1], rd) == EQUAL
    assert all(kappa_restriction_invariant(a, b, rd) == DISTINCT for a in forms for b in forms if a != b)
    rd4 = build_root_datum("A4", 5)
    (zero, D), = compatible_pairs(rd4)
    assert D != zero and killing_pullback(D, rd4.sym, 5) == killing_pullback(zero, rd4.sym, 5)
    assert kappa_restriction_invariant(zero, D, rd4) == COMPATIBLE


def test_compatible_pair_under_invertible_kappa_is_impossible():
    rd = build_root_datum("A2", 5)
    rnd = random.Random(0)
    forms = enumerate_alternating(2, 5)
    for _ in range(10):
        a, b = rnd.sample(forms, 2)
        assert kappa_restriction_invariant(a, b, rd) != COMPATIBLE
