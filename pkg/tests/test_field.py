from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from polyabc.errors import DivisionByZero, FieldMismatch, NotPrime
from polyabc.field import (
    GF,
    MAX_MODULUS,
    Q,
    FieldDesc,
    FieldKind,
    characteristic,
    egcd,
    field_arithmetic,
    is_prime,
    make_field,
)


def test_make_field():
    assert make_field(FieldKind.PRIME_FIELD, 5) == GF(5)
    assert make_field("Rationals") == Q
    assert characteristic(make_field("Rationals")) == 0
    with pytest.raises(NotPrime):
        make_field(FieldKind.PRIME_FIELD, 6)
    with pytest.raises(NotPrime):
        make_field(FieldKind.PRIME_FIELD)


@pytest.mark.parametrize("bad", [0, 1, 4, 91, 2**31 + 11])
def test_bad_moduli(bad):
    with pytest.raises(NotPrime):
        GF(bad)


def test_largest_allowed_modulus():
    assert GF(MAX_MODULUS).characteristic == MAX_MODULUS


def test_is_prime_against_sympy():
    assert [n for n in range(3000) if is_prime(n)] == list(sympy.primerange(0, 3000))


def test_characteristic():
    assert characteristic(Q) == 0
    assert characteristic(GF(7)) == 7
    assert characteristic(GF(2)) == 2
    assert str(Q) == "Q" and str(GF(7)) == "F_7"
    assert Q.tag == "q" and GF(7).tag == "fp:7"


def test_examples():
    half, third = Q.elem(Fraction(1, 2)), Q.elem(Fraction(1, 3))
    assert field_arithmetic("add", half, third) == Fraction(5, 6)
    F5 = GF(5)
    assert field_arithmetic("inv", F5.elem(2)) == 3
    with pytest.raises(DivisionByZero):
        field_arithmetic("div", F5.elem(1), F5.elem(0))
    with pytest.raises(DivisionByZero):
        Q.elem(0).inv()


def test_mismatch():
    with pytest.raises(FieldMismatch):
        field_arithmetic("add", GF(5).elem(1), GF(7).elem(1))
    with pytest.raises(FieldMismatch):
        GF(5).elem(1) + GF(7).elem(1)


def test_canonical_storage():
    assert GF(5).elem(-1).value == 4
    assert GF(5).elem(Fraction(1, 2)).value == 3
    assert Q.elem(Fraction(4, -6)).value == Fraction(-2, 3)
    with pytest.raises(DivisionByZero):
        GF(2).elem(Fraction(1, 2))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 101, 65537])
def test_every_inverse(p):
    F = GF(p)
    for x in range(1, min(p, 2000)):
        assert F.mul(x, F.inv(x)) == 1


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_egcd_bezout(a, b):
    g, x, y = egcd(a, b)
    assert a * x + b * y == g
    assert g == sympy.gcd(a, b)


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(p, x, y, z):
    F = GF(p)
    x, y, z = F.elem(x), F.elem(y), F.elem(z)
    assert (x + y) * z == x * z + y * z
    assert x - x == 0
    assert -(-x) == x
    if y:
        assert (x / y) * y == x
    assert x ** (p - 1) == (1 if x else 0)


@given(st.fractions(), st.fractions())
def test_rational_matches_fraction(x, y):
    a, b = Q.elem(x), Q.elem(y)
    assert (a + b).value == x + y
    assert (a * b).value == x * y
    assert (a - b).value == x - y
    if y:
        assert (a / b).value == x / y


def test_field_desc_is_hashable_and_frozen():
    assert len({GF(5), GF(5), FieldDesc.prime(5), Q}) == 2
    with pytest.raises(Exception):
        GF(5).modulus = 7
