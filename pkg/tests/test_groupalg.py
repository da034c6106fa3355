import random

import pytest

from uqtwist.engine import AlgebraElement, build_engine
from uqtwist.groupalg import (enumerate_alternating, form_left_multiply, form_to_twist, gauge_group_twist,
                              group_inverse, group_unit_gauge, idempotent, normalize_group_twist,
                              random_group_unit)
from uqtwist.scalars import CycScalar
from uqtwist.tensor import HopfFrame, TensorElement


@pytest.fixture(scope="module")
def a2():
    return build_engine("A2", 5)


@pytest.fixture(scope="module")
def a1():
    return build_engine("A1", 5)


def test_trivial_idempotent(a1):
    e = idempotent((0,), a1)
    fifth = CycScalar.from_rational(5, "1/5")
    assert e == AlgebraElement(a1, {((g,), (0,)): fifth for g in range(5)})
    assert e * e == e


def test_idempotents_are_orthogonal(a1):
    es = [idempotent((a,), a1) for a in range(5)]
    for i, e in enumerate(es):
        for j, f in enumerate(es):
            assert e * f == (e if i == j else AlgebraElement.zero(a1))
    assert sum(es[1:], es[0]) == AlgebraElement.one(a1)


@pytest.mark.parametrize("rank,l,count", [(1, 5, 1), (2, 5, 5), (3, 7, 343)])
def test_alternating_count(rank, l, count):
    forms = enumerate_alternating(rank, l)
    assert len(forms) == count
    if rank == 1:
        assert forms == [((0,),)]


def test_form_to_twist(a2):
    zero = ((0, 0), (0, 0))
    assert form_to_twist(zero, a2) == TensorElement.one(a2)
    J = form_to_twist(((0, 1), (4, 0)), a2)
    assert len(J.terms) == 625
    ok, _ = HopfFrame(a2).is_twist(J)
    assert ok


def test_normalize_recovers_forms(a2):
    rnd = random.Random(3)
    for M in enumerate_alternating(2, 5):
        v, N = normalize_group_twist(form_to_twist(M, a2))
        assert N == M and v == AlgebraElement.one(a2)
        J = gauge_group_twist(random_group_unit(a2, rnd), form_to_twist(M, a2))
        v, N = normalize_group_twist(J)
        assert N == M
        assert gauge_group_twist(v, J) == form_to_twist(M, a2)


def test_symmetric_form_is_coboundary(a2):
    S = ((1, 2), (2, 3))
    J = form_to_twist(S, a2)
    v, N = normalize_group_twist(J)
    assert N == ((0, 0), (0, 0))
    assert gauge_group_twist(v, J) == TensorElement.one(a2)


def test_form_left_multiply_matches_product(a2):
    M = ((0, 2), (3, 0))
    F = TensorElement(a2, {(((1, 0), (1, 0, 0)), ((0, 0), (0, 0, 1))): a2.one})
    assert form_left_multiply(M, F) == form_to_twist(M, a2) * F


def test_group_unit_gauge_matches_direct_gauge(a1):
    rnd = random.Random(5)
    frame = HopfFrame(a1)
    E = AlgebraElement.E(a1, 0)
    F = frame.delta(AlgebraElement.one(a1) + E) * TensorElement(a1, {((a1.zero_k, (0,)), (a1.zero_k, (1,))): a1.one})
    v = random_group_unit(a1, rnd)
    assert group_unit_gauge(v, F) == frame.gauge(v, F, group_inverse(v))
