from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surfsec.errors import DivisionByZero, SingularMatrix
from surfsec.exactfield import CycloMatrix, CycloNumber, cyclotomic_poly, parse_cyclo, zeta

ONE = CycloNumber.rational(1)
ZERO = CycloNumber.rational(0)

orders = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12])
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def cyclo(draw, order=None):
    n = draw(orders) if order is None else order
    return CycloNumber(n, draw(st.lists(small, min_size=n, max_size=n)))


@st.composite
def same_order_triple(draw):
    n = draw(orders)
    return draw(cyclo(n)), draw(cyclo(n)), draw(cyclo(n))


def test_i_squared():
    assert zeta(4) * zeta(4) == -1


def test_cube_roots_sum_to_zero():
    z = zeta(3)
    assert 1 + z + z * z == 0


def test_mixed_orders_multiply_in_the_compositum():
    w = zeta(2) * zeta(3)
    assert w == -zeta(3)
    assert w**6 == 1 and w**3 == -1


def test_inverses():
    assert ONE.inverse() == 1
    z = zeta(3)
    assert (1 + z).inverse() == -z
    assert CycloNumber.rational(2).inverse() == Fraction(1, 2)
    with pytest.raises(DivisionByZero):
        ZERO.inverse()


@pytest.mark.parametrize("n", range(1, 25))
def test_cyclotomic_polynomial_vanishes_at_primitive_root(n):
    z = zeta(n)
    assert sum((z**k * c for k, c in enumerate(cyclotomic_poly(n))), ZERO) == 0
    assert z**n == 1
    assert all(z**k != 1 for k in range(1, n))


@settings(max_examples=150, deadline=None)
@given(same_order_triple())
def test_ring_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@settings(max_examples=100, deadline=None)
@given(cyclo(), cyclo())
def test_mixed_order_arithmetic_is_consistent(a, b):
    assert a * b == b * a
    assert (a + b) - b == a


@settings(max_examples=100, deadline=None)
@given(cyclo())
def test_nonzero_elements_are_invertible(a):
    if a:
        assert a * a.inverse() == 1


@settings(max_examples=100, deadline=None)
@given(cyclo())
def test_string_and_json_round_trip(a):
    assert parse_cyclo(str(a), a.order) == a
    assert CycloNumber.from_json(a.to_json()) == a


def test_pretty_printing():
    assert str(parse_cyclo("1/2 - 1/2*z3")) == "1/2 - 1/2*z3"
    assert (1 + zeta(3)).to_json() == {"order": 3, "coeffs": ["1", "1"]}


def test_matrix_examples():
    eye = CycloMatrix.identity(2)
    assert eye @ eye == eye
    assert CycloMatrix.diag([zeta(4), -zeta(4)]).trace() == 0
    m = CycloMatrix([[0, 1], [-1, 0]])
    assert m.inverse() == CycloMatrix([[0, -1], [1, 0]])
    assert m @ m.inverse() == eye


def test_kernel_and_solve():
    assert len(CycloMatrix.zeros(2, 2).kernel()) == 2
    assert CycloMatrix.identity(2).kernel() == []
    z = zeta(3)
    assert CycloMatrix([[1, z], [0, 1]]).solve([0, 1]) == [-z, 1]
    with pytest.raises(SingularMatrix):
        CycloMatrix([[1, 1], [1, 1]]).inverse()


@settings(max_examples=40, deadline=None)
@given(st.lists(cyclo(4), min_size=9, max_size=9))
def test_inverse_when_invertible(entries):
    m = CycloMatrix([entries[0:3], entries[3:6], entries[6:9]], 4)
    try:
        inv = m.inverse()
    except SingularMatrix:
        assert m.kernel()
        return
    assert m @ inv == CycloMatrix.identity(3, 4)
    assert inv @ m == CycloMatrix.identity(3, 4)
