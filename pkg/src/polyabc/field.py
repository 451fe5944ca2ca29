"""Exact arithmetic over the rationals and prime fields.

Coefficients are stored "raw" inside polynomials for speed: a
:class:`fractions.Fraction` over Q, a plain ``int`` residue in ``[0, p)``
over F_p.  :class:`FieldDesc` knows how to combine raw values;
:class:`FieldElem` wraps one raw value together with its field for the
public, operator-friendly API.
"""

from __future__ import annotations

import enum
import math
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from polyabc.errors import DivisionByZero, FieldMismatch, NotPrime

MAX_MODULUS = 2**31 - 1

Raw = Union[int, Fraction]


class FieldKind(str, enum.Enum):
    RATIONALS = "Rationals"
    PRIME_FIELD = "PrimeField"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b)``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@lru_cache(maxsize=4096)
def _inv_mod(x: int, p: int) -> int:
    if x == 0:
        raise DivisionByZero(f"0 has no inverse in F_{p}")
    _, s, _ = egcd(x, p)
    return s % p


@dataclass(frozen=True)
class FieldDesc:
    kind: FieldKind
    modulus: int = 0

    def __post_init__(self):
        if self.kind is FieldKind.PRIME_FIELD:
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise NotPrime(f"modulus must be an integer >= 2, got {self.modulus!r}")
            if self.modulus > MAX_MODULUS:
                raise NotPrime(f"modulus {self.modulus} exceeds cap 2^31 - 1")
            if not is_prime(self.modulus):
                raise NotPrime(f"{self.modulus} is not prime")
        elif self.modulus:
            raise ValueError("the rationals take no modulus")

    # -- construction -------------------------------------------------
    @classmethod
    def rationals(cls) -> FieldDesc:
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> FieldDesc:
        return GF(p)

    @property
    def characteristic(self) -> int:
        return self.modulus

    @property
    def is_finite(self) -> bool:
        return self.kind is FieldKind.PRIME_FIELD

    @property
    def zero(self) -> Raw:
        return 0 if self.modulus else Fraction(0)

    @property
    def one(self) -> Raw:
        return 1 if self.modulus else Fraction(1)

    def __str__(self):
        return f"F_{self.modulus}" if self.modulus else "Q"

    @property
    def tag(self) -> str:
        """The ``--field`` spelling used by the CLI."""
        return f"fp:{self.modulus}" if self.modulus else "q"

    # -- raw value arithmetic -----------------------------------------
    def convert(self, x) -> Raw:
        """Coerce an int, Fraction or FieldElem into this field's raw form."""
        if isinstance(x, FieldElem):
            if x.field != self:
                raise FieldMismatch(f"element of {x.field} used in {self}")
            return x.value
        p = self.modulus
        if p:
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise DivisionByZero(f"denominator of {x} vanishes in {self}")
                return x.numerator * self.inv(x.denominator % p) % p
            return int(x) % p
        return Fraction(x)

    def add(self, x: Raw, y: Raw) -> Raw:
        p = self.modulus
        return (x + y) % p if p else x + y

    def sub(self, x: Raw, y: Raw) -> Raw:
        p = self.modulus
        return (x - y) % p if p else x - y

    def mul(self, x: Raw, y: Raw) -> Raw:
        p = self.modulus
        return x * y % p if p else x * y

    def neg(self, x: Raw) -> Raw:
        p = self.modulus
        return -x % p if p else -x

    def inv(self, x: Raw) -> Raw:
        p = self.modulus
        if p:
            return _inv_mod(x % p, p)
        if x == 0:
            raise DivisionByZero("0 has no inverse in Q")
        return 1 / Fraction(x)

    def div(self, x: Raw, y: Raw) -> Raw:
        return self.mul(x, self.inv(y))

    def pow(self, x: Raw, n: int) -> Raw:
        p = self.modulus
        if n < 0:
            return self.pow(self.inv(x), -n)
        return pow(x, n, p) if p else x**n

    def from_int(self, n: int) -> Raw:
        """Image of the integer ``n`` (i.e. ``n * 1``) in the field."""
        p = self.modulus
        return n % p if p else Fraction(n)

    def elements(self):
        """All field elements, in residue order (finite fields only)."""
        if not self.modulus:
            raise ValueError("Q is infinite")
        return range(self.modulus)

    def elem(self, x) -> FieldElem:
        return FieldElem(self, self.convert(x))

    def format(self, x: Raw) -> str:
        if self.modulus:
            return str(x)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


Q = FieldDesc.rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> FieldDesc:
    return FieldDesc(FieldKind.PRIME_FIELD, p)


def make_field(kind, modulus: int | None = None) -> FieldDesc:
    kind = FieldKind(kind)
    if kind is FieldKind.PRIME_FIELD:
        if modulus is None:
            raise NotPrime("a prime field needs a modulus")
        return FieldDesc.prime(modulus)
    return FieldDesc.rationals()


def characteristic(fd: FieldDesc) -> int:
    return fd.characteristic


@dataclass(frozen=True)
class FieldElem:
    field: FieldDesc
    value: Raw

    def _other(self, y) -> Raw:
        if isinstance(y, FieldElem):
            if y.field != self.field:
                raise FieldMismatch(f"{self.field} vs {y.field}")
            return y.value
        return self.field.convert(y)

    def __add__(self, y):
        return FieldElem(self.field, self.field.add(self.value, self._other(y)))

    __radd__ = __add__

    def __sub__(self, y):
        return FieldElem(self.field, self.field.sub(self.value, self._other(y)))

    def __rsub__(self, y):
        return FieldElem(self.field, self.field.sub(self._other(y), self.value))

    def __mul__(self, y):
        return FieldElem(self.field, self.field.mul(self.value, self._other(y)))

    __rmul__ = __mul__

    def __truediv__(self, y):
        return FieldElem(self.field, self.field.div(self.value, self._other(y)))

    def __rtruediv__(self, y):
        return FieldElem(self.field, self.field.div(self._other(y), self.value))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FieldElem(self.field, self.field.pow(self.value, n))

    def inv(self) -> FieldElem:
        return FieldElem(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, y):
        if isinstance(y, FieldElem):
            return self.field == y.field and self.value == y.value
        if isinstance(y, (int, Fraction)):
            try:
                return self.value == self.field.convert(y)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self.value)


_OPS = {
    "add": FieldElem.__add__,
    "sub": FieldElem.__sub__,
    "mul": FieldElem.__mul__,
    "div": FieldElem.__truediv__,
}


def field_arithmetic(op: str, x: FieldElem, y: FieldElem | None = None) -> FieldElem:
    if op == "neg":
        return -x
    if op == "inv":
        return x.inv()
    if op not in _OPS:
        raise ValueError(f"unknown field operation {op!r}")
    if y is None:
        raise ValueError(f"{op} needs two operands")
    if y.field != x.field:
        raise FieldMismatch(f"{x.field} vs {y.field}")
    return _OPS[op](x, y)
