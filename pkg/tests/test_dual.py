import pytest

from uqtwist.dual import (PositiveDual, bserre_check, bserre_negative_control, commutator_check,
                          eigenvalue_exponent, killing_character, minimal_relation_dims, nilpotency_check,
                          relation_report, word_relation_dims)
from uqtwist.engine import build_engine
from uqtwist.tensor import HopfFrame

FORMS = [((0, 0), (0, 0)), ((0, 1), (4, 0)), ((0, 3), (2, 0))]


@pytest.fixture(scope="module")
def a2():
    return build_engine("A2", 5)


@pytest.mark.parametrize("M", FORMS)
def test_relations_hold(a2, M):
    fr = HopfFrame(a2, M)
    ok, fails = commutator_check(fr)
    assert ok, fails
    assert bserre_check(fr)
    assert bserre_negative_control(fr)
    for k, (vanishes, below) in nilpotency_check(fr).items():
        assert vanishes and below, k


def test_dual_product_is_associative(a2):
    pd = PositiveDual(HopfFrame(a2, FORMS[1]))
    x, y = pd.generator(0), pd.generator(1)
    assert pd.multiply(pd.multiply(x, y), x) == pd.multiply(x, pd.multiply(y, x))


def test_word_route_matches_minimal_relations_in_low_degree(a2):
    for M in FORMS[:2]:
        fr = HopfFrame(a2, M)
        words = word_relation_dims(fr, 4)
        omega = minimal_relation_dims(fr, (2, 2))
        assert words == omega == {(1, 2): 1, (2, 1): 1}


def test_relation_report(a2):
    rows = {r["degree"]: r for r in relation_report(HopfFrame(a2, FORMS[1]))}
    assert set(rows) == {(1, 2), (2, 1), (5, 0), (0, 5), (5, 5)}
    for d in [(1, 2), (2, 1)]:
        assert not rows[d]["invariant"] and rows[d]["killing_eigen_exponent"] != 0
    for d in [(5, 0), (0, 5), (5, 5)]:
        assert rows[d]["invariant"] and rows[d]["killing_eigen_exponent"] == 0


def test_eigenvalue_on_serre_degree(a2):
    # with B trivial the Killing character acts on degree 2 a1 + a2 by q^{(2a1+a2, 2a1+a2)} = q^6
    fr = HopfFrame(a2)
    d = (2, 1)
    assert eigenvalue_exponent(fr, d, killing_character(a2, d)) == 6 % 5


@pytest.mark.parametrize("l", [5, 7])
def test_rank_one_relation_is_nilpotency(l):
    rows = relation_report(HopfFrame(build_engine("A1", l), ((0,),)))
    assert [(r["degree"], r["dim"], r["invariant"]) for r in rows] == [((l,), 1, True)]
