"""Strategies and independent oracles shared by the test modules."""

from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import strategies as st

from polyabc.field import GF, Q, FieldDesc
from polyabc.poly import Poly

FIELDS = [Q, GF(2), GF(3), GF(5), GF(7)]
PRIME_FIELDS = [GF(2), GF(3), GF(5), GF(7)]

X = sympy.Symbol("x")


def coeff_strategy(field: FieldDesc):
    if field.modulus:
        return st.integers(0, field.modulus - 1)
    return st.one_of(
        st.integers(-9, 9),
        st.fractions(min_value=-5, max_value=5, max_denominator=7),
    )


@st.composite
def polys(draw, field: FieldDesc, max_degree: int = 8, nonzero: bool = False):
    coeffs = draw(st.lists(coeff_strategy(field), max_size=max_degree + 1))
    p = Poly(field, coeffs)
    if nonzero and not p:
        p = Poly.const(field, 1) + Poly.t(field) * draw(st.sampled_from([0, 1]))
    return p


@st.composite
def field_and_polys(draw, count: int = 2, max_degree: int = 8, nonzero: bool = False):
    field = draw(st.sampled_from(FIELDS))
    return (field, *(draw(polys(field, max_degree, nonzero)) for _ in range(count)))


def to_sympy(p: Poly) -> sympy.Poly:
    coeffs = list(reversed(p.coeffs)) or [0]
    if p.field.modulus:
        return sympy.Poly([int(c) for c in coeffs], X, modulus=p.field.modulus)
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], X,
                      domain=sympy.QQ)


def from_sympy(sp: sympy.Poly, field: FieldDesc) -> Poly:
    coeffs = []
    for c in reversed(sp.all_coeffs()):
        if field.modulus:
            coeffs.append(int(c) % field.modulus)
        else:
            r = sympy.Rational(c)
            coeffs.append(Fraction(int(r.p), int(r.q)))
    return Poly(field, coeffs)


def oracle_radical(p: Poly) -> Poly:
    """Monic product of sympy's irreducible factors."""
    field = p.field
    if p.nat_degree == 0:
        return Poly.one(field)
    out = Poly.one(field)
    for f, _ in to_sympy(p).factor_list()[1]:
        out = out * from_sympy(f, field)
    return out.monic()


def oracle_gcd(p: Poly, q: Poly) -> Poly:
    return from_sympy(sympy.gcd(to_sympy(p), to_sympy(q)), p.field).monic()
