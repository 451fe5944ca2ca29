"""Square-free decomposition, radicals and p-th roots.

The radical of ``a`` is the product of its distinct monic irreducible
factors, which is exactly the product of the factors in a square-free
decomposition.  No irreducible factorization is ever performed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from polyabc.errors import DerivativeNonzero, NotCharP, ZeroPolynomial
from polyabc.field import FieldElem
from polyabc.poly import Poly, gcd_monic


@dataclass(frozen=True)
class SquareFreeDecomposition:
    """``unit * prod(f**m for f, m in parts)``, multiplicities ascending."""

    unit: FieldElem
    parts: tuple[tuple[Poly, int], ...]

    def expand(self) -> Poly:
        field = self.unit.field
        out = Poly.const(field, self.unit)
        for f, m in self.parts:
            out = out * f**m
        return out


def _exact(a: Poly, d: Poly) -> Poly:
    q, r = divmod(a, d)
    assert not r
    return q


def _yun(f: Poly) -> dict[int, Poly]:
    # f monic, nonconstant, characteristic zero
    out = {}
    df = f.derivative()
    g = gcd_monic(f, df)
    b = _exact(f, g)
    c = _exact(df, g)
    d = c - b.derivative()
    i = 1
    while b.nat_degree > 0:
        a = gcd_monic(b, d)
        if a.nat_degree > 0:
            out[i] = a
        b = _exact(b, a)
        c = _exact(d, a)
        d = c - b.derivative()
        i += 1
    return out


def _sqf_char_p(f: Poly) -> dict[int, Poly]:
    # f monic, nonconstant, characteristic p
    p = f.field.modulus
    out: dict[int, Poly] = {}
    df = f.derivative()
    if df:
        g = gcd_monic(f, df)
        h = _exact(f, g)  # primes whose multiplicity is prime to p
        i = 1
        while h.nat_degree > 0:
            common = gcd_monic(g, h)
            exact_i = _exact(h, common)
            if exact_i.nat_degree > 0:
                out[i] = exact_i
            g = _exact(g, common)
            h = common
            i += 1
        f = g  # only p-th power content remains
    if f.nat_degree > 0:
        for m, part in _sqf_char_p(pth_root(f)).items():
            key = m * p
            out[key] = out[key] * part if key in out else part
    return out


@lru_cache(maxsize=1 << 16)
def squarefree_decompose(a: Poly) -> SquareFreeDecomposition:
    if not a:
        raise ZeroPolynomial("the zero polynomial has no square-free decomposition")
    field = a.field
    unit = FieldElem(field, a.leading)
    f = a.monic()
    if f.nat_degree == 0:
        return SquareFreeDecomposition(unit, ())
    parts = _sqf_char_p(f) if field.modulus else _yun(f)
    return SquareFreeDecomposition(unit, tuple((parts[m], m) for m in sorted(parts)))


def radical(a: Poly) -> Poly:
    """Monic radical; ``radical(0) == radical(unit) == 1`` by convention."""
    out = Poly.one(a.field)
    if a.nat_degree == 0:
        return out
    for f, _ in squarefree_decompose(a).parts:
        out = out * f
    return out


def div_radical(a: Poly) -> Poly:
    """The exact quotient ``a / radical(a)``."""
    if not a:
        raise ZeroPolynomial("div_radical(0) is undefined")
    q, r = divmod(a, radical(a))
    assert not r
    return q


def is_squarefree(a: Poly) -> bool:
    if not a:
        raise ZeroPolynomial("square-freeness of 0 is undefined")
    return radical(a) == a.monic()


def pth_root(a: Poly) -> Poly:
    """Return ``g`` with ``g(t**p) == a``; requires ``a' == 0`` over F_p."""
    p = a.field.modulus
    if not p:
        raise NotCharP("p-th roots need a field of positive characteristic")
    if a.derivative():
        raise DerivativeNonzero(f"derivative of {a} is nonzero")
    return Poly._make(a.field, list(a.coeffs[::p]))
