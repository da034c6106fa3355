import pytest

from uqtwist.errors import ConfigError
from uqtwist.rootdata import (admissible_order, build_root_datum, cartan_det, killing_map,
                              serre_exponent_set)


def reflection_orbit_roots(cartan):
    """Positive roots as the Weyl orbit of the simple roots (independent of the closure code)."""
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    todo = list(simple)
    while todo:
        mu = todo.pop()
        for i in range(n):
            # s_i(mu) = mu - <mu, alpha_i^vee> alpha_i with <alpha_j, alpha_i^vee> = cartan[i][j]
            pairing = sum(cartan[i][j] * mu[j] for j in range(n))
            nu = tuple(mu[j] - (pairing if j == i else 0) for j in range(n))
            if nu not in seen and (all(x >= 0 for x in nu) or all(x <= 0 for x in nu)):
                seen.add(nu)
                todo.append(nu)
    return {mu for mu in seen if all(x >= 0 for x in mu)}


@pytest.mark.parametrize("label,l,count", [("A1", 5, 1), ("A2", 5, 3), ("B2", 7, 4), ("G2", 11, 6),
                                          ("A4", 5, 10), ("C3", 7, 9)])
def test_positive_roots_against_weyl_orbit(label, l, count):
    rd = build_root_datum(label, l)
    assert len(rd.positive_roots) == count
    assert set(rd.positive_roots) == reflection_orbit_roots(rd.cartan)


def test_a2_roots():
    assert set(build_root_datum("A2", 5).positive_roots) == {(1, 0), (0, 1), (1, 1)}


def test_lyndon_order_is_convex():
    for label, l in [("A2", 5), ("B2", 7), ("G2", 11), ("A4", 5)]:
        rd = build_root_datum(label, l)
        order = {mu: k for k, mu in enumerate(rd.positive_roots)}
        for mu in rd.positive_roots:
            for nu in rd.positive_roots:
                s = tuple(a + b for a, b in zip(mu, nu))
                if s in order and order[mu] < order[nu]:
                    assert order[mu] < order[s] < order[nu]


@pytest.mark.parametrize("label,l,ok", [("A2", 5, True), ("B2", 5, False), ("G2", 7, False),
                                        ("A2", 3, False), ("B2", 7, True), ("G2", 11, True)])
def test_admissible_order(label, l, ok):
    assert admissible_order(build_root_datum(label, l)) is ok


def test_serre_exponents():
    # simply laced: 4 for orthogonal simple pairs, 6 for adjacent ones; A2 has only the latter
    assert serre_exponent_set(build_root_datum("A2", 5)) == {6}
    assert serre_exponent_set(build_root_datum("A4", 5)) == {4, 6}
    assert serre_exponent_set(build_root_datum("B2", 7)) <= {4, 6, 10}
    assert 14 in serre_exponent_set(build_root_datum("G2", 11))


@pytest.mark.parametrize("label,l,invertible", [("A1", 5, True), ("A2", 5, True), ("A4", 5, False)])
def test_killing_map(label, l, invertible):
    rd = build_root_datum(label, l)
    assert killing_map(rd)[1] is invertible
    if label == "A4":
        assert cartan_det(rd) == 5


def test_bad_labels():
    for bad in ["X2", "A0", "A", "B1"]:
        with pytest.raises(ConfigError):
            build_root_datum(bad, 5)
