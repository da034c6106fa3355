import random

import pytest

from uqtwist.dp import (DpMove, apply_word, derivations, dp_exp_automorphism, dp_gauge, dp_tensor,
                        dp_twist_simple, dp_word_for_root, word_leading_term)
from uqtwist.engine import AlgebraElement, build_engine
from uqtwist.scalars import CycScalar
from uqtwist.tensor import HopfFrame, TensorElement
from uqtwist.verify import random_element


@pytest.mark.parametrize("label,l", [("A1", 5), ("A1", 7), ("A2", 5), ("A2", 7), ("B2", 7)])
def test_dp_twist_simple_is_twist(label, l):
    T = build_engine(label, l)
    for i in range(T.rank):
        J = dp_twist_simple(T, i, 1)
        assert HopfFrame(T).is_twist(J)[0]


def test_dp_twist_shape():
    T = build_engine("A1", 5)
    assert dp_twist_simple(T, 0, 0) == TensorElement.one(T)
    assert len(dp_tensor(T, 0).terms) == 4


def test_derivation_matches_big_algebra_and_stays_small():
    T = build_engine("A2", 5)
    D = derivations(T)
    rnd = random.Random(4)
    for _ in range(25):
        x = random_element(T, rnd, 2, 6)
        for i in range(T.rank):
            d = D.apply(i, x)
            assert d == D.direct(i, x)
            assert all(e < T.l for (_, p) in d.terms for e in p)


def test_leibniz_and_nilpotency():
    T = build_engine("A2", 5)
    D = derivations(T)
    rnd = random.Random(9)
    nonzero = 0
    for _ in range(25):
        x, y = random_element(T, rnd, 2, 5), random_element(T, rnd, 2, 5)
        i = rnd.randrange(2)
        assert D.apply(i, x * y) == D.apply(i, x) * y + x * D.apply(i, y)
        z = x
        for _ in range(T.max_height + 1):
            z = D.apply(i, z)
            if not z:
                break
        assert not z
        nonzero += bool(D.apply(i, x))
    assert nonzero > 5


def test_exp_automorphism_is_multiplicative():
    T = build_engine("A2", 5)
    rnd = random.Random(1)
    assert dp_exp_automorphism(T, 0, 0, AlgebraElement.E(T, 1)) == AlgebraElement.E(T, 1)
    for _ in range(10):
        x, y = random_element(T, rnd, 2, 4), random_element(T, rnd, 2, 4)
        lam = CycScalar.zeta(5, rnd.randrange(5))
        phi = lambda z: dp_exp_automorphism(T, 1, lam, z)  # noqa: E731
        assert phi(x * y) == phi(x) * phi(y)


def test_move_and_inverse_cancel():
    T = build_engine("A2", 5)
    fr = HopfFrame(T, ((0, 1), (4, 0)))
    F = apply_word(fr, dp_word_for_root(T, 1, 1), TensorElement.one(T))
    m = DpMove(0, CycScalar.from_int(5, 3))
    assert dp_gauge(fr, m.inverse(), dp_gauge(fr, m, F)) == F


def test_words():
    T = build_engine("A2", 5)
    fr = HopfFrame(T)
    for k in range(T.N):
        w = dp_word_for_root(T, k, 2)
        assert len(w) == (1 if sum(T.degrees[k]) == 1 else 4)
        lead = word_leading_term(fr, w)
        assert set(lead.degree_components()) == {tuple(5 * x for x in T.degrees[k])}
        if len(w) == 1:
            assert fr.is_twist(apply_word(fr, w, TensorElement.one(T)))[0]
    w = dp_word_for_root(T, 1, 1)
    G = apply_word(fr, w, TensorElement.one(T))
    assert apply_word(fr, w.inverse(), G) == TensorElement.one(T)
