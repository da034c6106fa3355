import random

import pytest

from uqtwist.cohomology import (RelativeCobar, absolute_h1, cobar_d1, cobar_d2, h_dims, rank_exact,
                                rank_mod_p, ModularImage, small_support_prediction, solve_bounding, to_big)
from uqtwist.dp import dp_tensor
from uqtwist.engine import BIG, AlgebraElement, build_engine
from uqtwist.errors import NotACocycle
from uqtwist.tensor import HopfFrame, TensorElement
from uqtwist.verify import random_element


@pytest.fixture(scope="module")
def a1():
    return build_engine("A1", 5)


@pytest.fixture(scope="module")
def a1_big():
    return build_engine("A1", 5, BIG, 12)


def test_d1_of_zero(a1):
    fr = HopfFrame(a1)
    assert not cobar_d1(fr, AlgebraElement.zero(a1))


@pytest.mark.parametrize("M", [None, ((0, 2), (3, 0))])
def test_d2_d1_vanishes(M):
    T = build_engine("A2", 5)
    fr = HopfFrame(T, M)
    rnd = random.Random(3)
    for _ in range(5):
        v = random_element(T, rnd, 2, 3)
        assert not cobar_d2(fr, cobar_d1(fr, v))


def test_small_a1_slices(a1):
    fr = HopfFrame(a1)
    assert h_dims(fr, (5,)) == (0, 1)
    assert h_dims(fr, (3,)) == (0, 0)
    assert small_support_prediction(a1) == {(5,)}


def test_big_a1_slice_vanishes(a1_big):
    assert h_dims(HopfFrame(a1_big), (5,)) == (0, 0)


def test_relative_h1_agrees_with_primitives(a1):
    fr = HopfFrame(a1)
    rc = RelativeCobar(fr)
    for g in [(1,), (2,), (3,)]:
        assert rc.slice(g).h1 == 0 == absolute_h1(fr, g)


def test_modular_certificate_agrees_with_exact_ranks():
    T = build_engine("A2", 5)
    rc = RelativeCobar(HopfFrame(T, ((0, 1), (4, 0))))
    for g in rc.scan_degrees(6)[:12]:
        a = rc.slice(g, exact=True)
        b = rc.slice(g, exact=False)
        assert (a.h1, a.h2, a.dims) == (b.h1, b.h2, b.dims)
    cols = [{0: T.one, 1: T.zeta(1)}, {0: T.one, 1: T.zeta(2)}, {0: T.zeta(2) + T.one, 1: T.zeta(3) + T.zeta(2)}]
    assert rank_exact(cols) == rank_mod_p(cols, ModularImage(5)) == 2
    assert rank_exact(cols[:1] + [{0: T.zeta(2), 1: T.zeta(3)}]) == 1


def test_bounding_round_trip(a1):
    fr = HopfFrame(a1)
    rnd = random.Random(8)
    for _ in range(5):
        v = random_element(a1, rnd, 2, 4)
        v = v.degree_components()
        for d, x in v.items():
            if not any(d):
                continue
            J = cobar_d1(fr, x)
            w = solve_bounding(fr, J)
            assert cobar_d1(fr, w) == J


def test_minimal_term_of_gauged_twist_is_solvable():
    T = build_engine("A2", 5)
    fr = HopfFrame(T, ((0, 3), (2, 0)))
    u = AlgebraElement.one(T) + AlgebraElement.root_vector(T, 1).scale(T.zeta(1))
    J = fr.gauge(u, TensorElement.one(T)) - TensorElement.one(T)
    comps = J.degree_components()
    low = min(comps, key=sum)
    assert solve_bounding(fr, comps[low]) is not None


def test_non_cocycle_is_rejected(a1):
    E = (a1.zero_k, (1,))
    with pytest.raises(NotACocycle):
        solve_bounding(HopfFrame(a1), TensorElement(a1, {(E, E): a1.one}))


def test_dp_term_small_versus_big(a1, a1_big):
    T0 = dp_tensor(a1, 0)
    assert solve_bounding(HopfFrame(a1), T0) is None
    big = HopfFrame(a1_big)
    J = to_big(T0, a1_big)
    v = solve_bounding(big, J, unique=True)
    assert v is not None and cobar_d1(big, v) == J
    assert set(v.terms) == {(a1_big.zero_k, (5,))}
