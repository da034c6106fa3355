import pytest
import sympy
from hypothesis import given, settings, strategies as st

from uqtwist.errors import SpecializationPole
from uqtwist.scalars import CycScalar, GenericScalar, Laurent, q_binomial, q_int, specialize

X = sympy.symbols("x")


def as_poly(a: CycScalar):
    return sum(sympy.Rational(int(c), a.d) * X ** i for i, c in enumerate(a.c))


def reduce_mod_cyclotomic(expr, l):
    return sympy.rem(sympy.expand(expr), sympy.cyclotomic_poly(l, X), X)


coords = st.lists(st.integers(-6, 6), min_size=4, max_size=4)


@settings(max_examples=60, deadline=None)
@given(coords, coords)
def test_field_operations_match_polynomial_oracle(a, b):
    x, y = CycScalar(5, a), CycScalar(5, b)
    for got, want in [(x + y, as_poly(x) + as_poly(y)), (x * y, as_poly(x) * as_poly(y))]:
        assert sympy.expand(as_poly(got) - reduce_mod_cyclotomic(want, 5)) == 0


@settings(max_examples=60, deadline=None)
@given(coords)
def test_inverse(a):
    x = CycScalar(5, a)
    if x.is_zero():
        return
    assert (x * x.inverse()).is_one()
    assert (x / x).is_one()


@pytest.mark.parametrize("l", [3, 5, 7, 11])
def test_zeta_has_order_l(l):
    z = CycScalar.zeta(l)
    assert (z ** l).is_one()
    assert all(not (z ** k).is_one() for k in range(1, l))
    assert sum((CycScalar.zeta(l, k) for k in range(l)), CycScalar.zero(l)).is_zero()


def test_q_binomial_examples():
    assert q_binomial(2, 1) == GenericScalar(Laurent.mono(1) + Laurent.mono(-1))
    assert q_binomial(5, 2, l=5).is_zero()
    v = q_binomial(4, 2, l=5)
    z = CycScalar.zeta(5)
    # [4 choose 2] = q^4 + q^2 + 2 + q^-2 + q^-4
    assert v == z ** 4 + z ** 2 + CycScalar.from_int(5, 2) + z ** 3 + z


def test_specialize():
    assert specialize(GenericScalar.v(5), 5).is_one()
    v = GenericScalar.v()
    x = specialize((v - v.inverse()).inverse(), 5)
    z = CycScalar.zeta(5)
    assert x * (z - z.inverse()) == CycScalar.one(5)
    with pytest.raises(SpecializationPole):
        specialize(GenericScalar(Laurent.const(1)) / GenericScalar(q_int(5).num), 5)


def test_root_of_unity_log_and_json():
    for k in range(7):
        assert CycScalar.zeta(7, k).root_of_unity_log() == k
    assert CycScalar.from_int(7, 2).root_of_unity_log() is None
    x = CycScalar.from_coords(7, ["1/3", 2, 0, -1, 0, 5])
    assert CycScalar.from_json(7, x.to_json()) == x
    assert abs(CycScalar.zeta(7).approx() - complex(sympy.N(sympy.exp(2 * sympy.pi * sympy.I / 7)))) < 1e-12
