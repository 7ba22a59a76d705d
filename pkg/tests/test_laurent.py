import pytest
from hypothesis import given
from hypothesis import strategies as st

from qca.errors import DivisionByZero, MalformedInput, NotDivisible
from qca.laurent import V, LaurentUV, LaurentV, laurent_divide_exact, q_analog
from strategies import laurent_v

vinv = LaurentV.monomial(-1)


def test_q_analog_examples():
    assert q_analog(0) == 0
    assert q_analog(1) == 1
    assert q_analog(2) == V + vinv
    assert q_analog(-3) == -(LaurentV.monomial(2) + 1 + LaurentV.monomial(-2))


def test_q_analog_by_polynomial_division():
    # (v^-3 - v^3) / (v - v^-1) computed by long division, independent of q_analog
    num = LaurentV.monomial(-3) - LaurentV.monomial(3)
    assert laurent_divide_exact(num, V - vinv) == q_analog(-3)


@pytest.mark.parametrize("a", range(-50, 51))
def test_q_analog_identity(a):
    assert q_analog(a) * (V - vinv) == LaurentV.monomial(a) - LaurentV.monomial(-a)
    assert q_analog(-a) == -q_analog(a)
    assert q_analog(a).at_one() == a


def test_divide_examples():
    assert laurent_divide_exact(LaurentV.monomial(2) - LaurentV.monomial(-2), V - vinv) == V + vinv
    assert laurent_divide_exact(LaurentV.one(), LaurentV.one()) == 1
    with pytest.raises(NotDivisible):
        laurent_divide_exact(V + 1, V - vinv)
    with pytest.raises(DivisionByZero):
        laurent_divide_exact(V, LaurentV.zero())


def test_not_divisible_brute_force():
    # every candidate quotient of the right degree range with small coefficients fails
    num, den = V + 1, V - vinv
    for a in range(-3, 4):
        for b in range(-3, 4):
            q = LaurentV([(0, a), (1, b)])
            assert q * den != num


@given(laurent_v(), laurent_v())
def test_divide_roundtrip(a, b):
    if b:
        assert laurent_divide_exact(a * b, b) == a


@given(laurent_v(), laurent_v(), laurent_v())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * 1 == a and a + 0 == a


@given(laurent_v())
def test_json_roundtrip(a):
    assert LaurentV.from_json(a.to_json()) == a


def test_json_rejects_unsorted():
    with pytest.raises(MalformedInput):
        LaurentV.from_json([[1, 1], [0, 1]])
    with pytest.raises(MalformedInput):
        LaurentV.from_json([[0, 0]])
    with pytest.raises(MalformedInput):
        LaurentUV.from_json([[0, 1]])


def test_uv_arithmetic():
    u = LaurentUV.monomial(1, 0)
    v = LaurentUV.monomial(0, 1)
    x = (u + v) * (u - v)
    assert x == u * u - v * v
    assert x.at_u_one() == 1 - LaurentV.monomial(2)
    assert LaurentUV.from_json(x.to_json()) == x
    assert (u * v) ** -1 == LaurentUV.monomial(-1, -1)


@given(st.integers(-6, 6), st.integers(0, 5))
def test_power(k, e):
    x = LaurentV.monomial(k, -1)
    assert x ** e * x ** (-e) == 1


def test_canonical_form():
    a = LaurentV([(1, 2), (1, -2), (0, 3)])
    assert a.terms == {0: 3}
    assert hash(a) == hash(LaurentV.constant(3))
    assert str(LaurentV([(-1, 1), (2, -3)])) == "v^-1 - 3*v^2"
