"""Dense univariate polynomials over a :class:`~polyabc.field.FieldDesc`.

``coeffs[i]`` is the coefficient of ``t**i``; the tuple never ends in a
zero, so the zero polynomial is the empty tuple.  Arithmetic is
schoolbook throughout.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from polyabc.errors import BothZero, DivisionByZero, FieldMismatch
from polyabc.field import FieldDesc, FieldElem, Raw


def _trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


class Poly:
    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldDesc, coeffs: Iterable = ()):
        self.field = field
        self.coeffs = tuple(_trim([field.convert(c) for c in coeffs]))
        self._hash = None

    @classmethod
    def _make(cls, field: FieldDesc, coeffs: list) -> Poly:
        # coeffs must already be reduced and trimmed
        p = object.__new__(cls)
        p.field = field
        p.coeffs = tuple(coeffs)
        p._hash = None
        return p

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, field: FieldDesc) -> Poly:
        return cls._make(field, [])

    @classmethod
    def one(cls, field: FieldDesc) -> Poly:
        return cls._make(field, [field.one])

    @classmethod
    def const(cls, field: FieldDesc, c) -> Poly:
        return cls(field, [c])

    @classmethod
    def monomial(cls, field: FieldDesc, n: int, c=1) -> Poly:
        c = field.convert(c)
        if not c:
            return cls.zero(field)
        return cls._make(field, [field.zero] * n + [c])

    @classmethod
    def t(cls, field: FieldDesc) -> Poly:
        return cls.monomial(field, 1)

    # -- degrees and coefficients ----------------------------------------
    @property
    def degree(self) -> int | None:
        """Degree, with ``None`` standing for the -infinity of the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def nat_degree(self) -> int:
        return max(len(self.coeffs) - 1, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def leading(self) -> Raw:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, i: int) -> FieldElem:
        v = self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero
        return FieldElem(self.field, v)

    def monic(self) -> Poly:
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    # -- ring operations ------------------------------------------------
    def _check(self, other: Poly):
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, FieldElem):
            return Poly.const(self.field, other)
        try:
            return Poly.const(self.field, other)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        p = self.field.modulus
        c = list(a)
        for i, y in enumerate(b):
            c[i] = (c[i] + y) % p if p else c[i] + y
        return Poly._make(self.field, _trim(c))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.modulus
        return Poly._make(self.field, [(-x) % p if p else -x for x in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> Poly:
        c = self.field.convert(c)
        if not c:
            return Poly.zero(self.field)
        p = self.field.modulus
        return Poly._make(self.field, [x * c % p if p else x * c for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field)
        if len(a) == 1:
            return other.scale(a[0])
        if len(b) == 1:
            return self.scale(b[0])
        res = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    res[i + j] += x * y
        p = self.field.modulus
        if p:
            res = [r % p for r in res]
        # leading coefficient is a product of nonzero field elements
        return Poly._make(self.field, res)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        b = other.coeffs
        if not b:
            raise DivisionByZero("polynomial division by zero")
        a = self.coeffs
        field = self.field
        db = len(b) - 1
        if len(a) <= db:
            return Poly.zero(field), self
        p = field.modulus
        inv = field.inv(b[-1])
        r = list(a)
        q = [0] * (len(a) - db)
        for k in range(len(a) - 1 - db, -1, -1):
            c = r[k + db]
            if not c:
                continue
            c = c * inv % p if p else c * inv
            q[k] = c
            if p:
                for j in range(db):
                    r[k + j] = (r[k + j] - c * b[j]) % p
            else:
                for j in range(db):
                    r[k + j] -= c * b[j]
        return Poly._make(field, _trim(q)), Poly._make(field, _trim(r[:db]))

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    # -- calculus and substitution -----------------------------------------
    def derivative(self) -> Poly:
        p = self.field.modulus
        c = [i * x % p if p else i * x for i, x in enumerate(self.coeffs)][1:]
        return Poly._make(self.field, _trim(c))

    def compose_t_pow(self, n: int) -> Poly:
        """Substitute ``t**n`` for ``t``."""
        if n < 1:
            raise ValueError("exponent must be >= 1")
        if n == 1 or len(self.coeffs) <= 1:
            return self
        zero = self.field.zero
        c = [zero] * ((len(self.coeffs) - 1) * n + 1)
        for i, x in enumerate(self.coeffs):
            c[i * n] = x
        return Poly._make(self.field, c)

    def __call__(self, x) -> FieldElem:
        field = self.field
        x = field.convert(x)
        acc = field.zero
        for c in reversed(self.coeffs):
            acc = field.add(field.mul(acc, x), c)
        return FieldElem(field, acc)

    # -- comparison and display ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs and (
                self.field is other.field or self.field == other.field)
        if isinstance(other, (int, FieldElem)):
            return self == Poly.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def __reduce__(self):
        return (Poly._make, (self.field, list(self.coeffs)))

    def __repr__(self):
        return f"Poly({self.field}, {self})"

    def __str__(self):
        from polyabc.parser import format_poly

        return format_poly(self)


# -- free-function API ----------------------------------------------------------


def nat_degree(p: Poly) -> int:
    return p.nat_degree


def degree(p: Poly) -> int | None:
    return p.degree


def derivative(p: Poly) -> Poly:
    return p.derivative()


def compose_t_pow(g: Poly, n: int) -> Poly:
    return g.compose_t_pow(n)


def eval_poly(p: Poly, x) -> FieldElem:
    return p(x)


def _primitive(c: list) -> list[int]:
    # integer multiple of c with content 1 and positive leading coefficient
    den = math.lcm(*(Fraction(x).denominator for x in c))
    ints = [int(x * den) for x in c]
    g = math.gcd(*ints)
    if ints[-1] < 0:
        g = -g
    return [x // g for x in ints]


def _gcd_rational(a: list, b: list) -> list[int]:
    # primitive remainder sequence over Z: keeps coefficient growth in check
    a, b = _primitive(a), _primitive(b)
    while b:
        r, db, lb = list(a), len(b) - 1, b[-1]
        while len(r) - 1 >= db:
            lr, k = r[-1], len(r) - 1 - db
            r = [x * lb for x in r]
            for j in range(db + 1):
                r[k + j] -= lr * b[j]
            r = _trim(r)
            if not r:
                break
        a, b = b, (_primitive(r) if r else [])
    return a


def gcd_monic(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    p._check(q)
    if not p and not q:
        raise BothZero("gcd of two zero polynomials is undefined")
    if not p.field.modulus and p and q:
        g = _gcd_rational(list(p.coeffs), list(q.coeffs))
        return Poly._make(p.field, [Fraction(x, g[-1]) for x in g])
    while q:
        p, q = q, divmod(p, q)[1]
    return p.monic()


def is_coprime(p: Poly, q: Poly) -> bool:
    if not p and not q:
        return False
    return gcd_monic(p, q).nat_degree == 0


def divides(d: Poly, p: Poly) -> bool:
    if not d:
        return not p
    return not divmod(p, d)[1]


def exact_div(p: Poly, d: Poly) -> Poly:
    q, r = divmod(p, d)
    if r:
        raise ArithmeticError(f"{d} does not divide {p}")
    return q


def associated(p: Poly, q: Poly) -> bool:
    """Equal up to a nonzero scalar (units of k[t] are exactly k*)."""
    return p.monic() == q.monic()


def product(polys: Sequence[Poly], field: FieldDesc) -> Poly:
    out = Poly.one(field)
    for f in polys:
        out = out * f
    return out
