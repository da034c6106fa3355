import random

import pytest

from uqtwist.dp import apply_word, dp_exp_automorphism, dp_twist_simple, dp_word_for_root
from uqtwist.engine import AlgebraElement, build_engine
from uqtwist.errors import NotAUnit
from uqtwist.reduction import random_small_element
from uqtwist.tensor import (HopfFrame, TensorElement, TwistedAut, algebra_inverse, is_hopf_map_into_twisted,
                            tensor_inverse, twisted_aut_compose)


@pytest.fixture(scope="module")
def a1():
    return build_engine("A1", 5)


@pytest.fixture(scope="module")
def a2():
    return build_engine("A2", 5)


def _generators(T):
    return [AlgebraElement.E(T, i) for i in range(T.rank)] + [AlgebraElement.K(T, i) for i in range(T.rank)]


def test_trivial_twist(a1):
    assert HopfFrame(a1).is_twist(TensorElement.one(a1))[0]


def test_non_twist_is_rejected(a1):
    E = ((a1.zero_k, (1,)))
    J = TensorElement.one(a1) + TensorElement(a1, {(E, E): a1.one})
    ok, cert = HopfFrame(a1).is_twist(J)
    assert not ok and cert["violation"] == "cocycle"


def test_non_unit_is_rejected(a1):
    with pytest.raises(NotAUnit):
        HopfFrame(a1).is_twist(TensorElement(a1, {}))


def test_dp_twist_passes(a1):
    J = dp_twist_simple(a1, 0, 1)
    assert len(J.terms) == 5
    assert HopfFrame(a1).is_twist(J)[0]


def test_shifted_twist(a2):
    """A twist built in the frame of B is a twist for the conjugated coproduct only."""
    M = ((0, 1), (4, 0))
    fr = HopfFrame(a2, M)
    F = apply_word(fr, dp_word_for_root(a2, 0, 2), TensorElement.one(a2))
    assert fr.is_twist(F)[0]
    assert not HopfFrame(a2).is_twist(F)[0]


def test_gauge_preserves_twists(a2):
    fr = HopfFrame(a2, ((0, 3), (2, 0)))
    u = AlgebraElement.one(a2) + AlgebraElement.E(a2, 1).scale(a2.zeta(2))
    J = fr.gauge(u, TensorElement.one(a2))
    assert J != TensorElement.one(a2)
    assert fr.is_twist(J)[0]


def test_inverses(a2):
    rnd = random.Random(2)
    v = AlgebraElement.K(a2, 1) * (AlgebraElement.one(a2) + random_small_element(a2, rnd, 3, 3))
    assert v * algebra_inverse(v) == AlgebraElement.one(a2)
    J = dp_twist_simple(a2, 1, 3)
    assert J * tensor_inverse(J) == TensorElement.one(a2)


def test_identity_pair(a2):
    fr = HopfFrame(a2)
    ident = TwistedAut(lambda x: x, TensorElement.one(a2))
    assert is_hopf_map_into_twisted(ident, fr, _generators(a2))
    J = dp_twist_simple(a2, 0, 1)
    pair = TwistedAut(lambda x: dp_exp_automorphism(a2, 0, 1, x), J)
    comp = twisted_aut_compose(ident, pair, fr)
    assert comp.J == J
    assert all(comp.apply(x) == pair.apply(x) for x in _generators(a2))


@pytest.mark.parametrize("lam", [1, 2])
def test_dp_automorphism_is_hopf_into_twisted(a2, lam):
    fr = HopfFrame(a2)
    J = dp_twist_simple(a2, 0, lam)
    good = TwistedAut(lambda x: dp_exp_automorphism(a2, 0, lam, x), J)
    wrong_sign = TwistedAut(lambda x: dp_exp_automorphism(a2, 0, -lam, x), J)
    assert is_hopf_map_into_twisted(good, fr, _generators(a2))
    assert not is_hopf_map_into_twisted(wrong_sign, fr, _generators(a2))
