"""Wronskians and the Mason-Stothers verdict engine.

:func:`mason_stothers_verdict` computes its conclusion twice: once from
the degree of ``radical(a*b*c)`` directly, and once by running the
Wronskian argument (``div_radical(abc)`` divides the common Wronskian,
whose degree is below ``deg a + deg b``).  The two must agree; a
disagreement raises :class:`~polyabc.errors.InconsistencyError`.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

from polyabc.errors import (
    DivisibilityFailure,
    InconsistencyError,
    NotZeroSum,
    PreconditionViolated,
    WrongCharacteristic,
    ZeroWronskian,
)
from polyabc.poly import Poly, gcd_monic, is_coprime
from polyabc.radical import radical


class VerdictKind(str, enum.Enum):
    DERIVATIVES_VANISH = "DerivativesVanish"
    INEQUALITY_HOLDS = "InequalityHolds"
    VIOLATION = "Violation"
    ALL_CONSTANT = "AllConstant"


@dataclass(frozen=True)
class MsVerdict:
    kind: VerdictKind
    max3_degree: int
    radical_degree: int
    margin: int | None = None
    wronskian_degree: int | None = None

    @property
    def tight(self) -> bool:
        return self.margin == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        return d


def wronskian(a: Poly, b: Poly) -> Poly:
    return a * b.derivative() - a.derivative() * b


def wronskian_degree_bound_holds(a: Poly, b: Poly) -> bool:
    w = wronskian(a, b)
    if not w:
        raise ZeroWronskian("W(a, b) = 0")
    return w.nat_degree < a.nat_degree + b.nat_degree


def wronskian_common(a: Poly, b: Poly, c: Poly) -> Poly:
    if a + b + c:
        raise NotZeroSum("a + b + c != 0")
    w_ab, w_bc, w_ca = wronskian(a, b), wronskian(b, c), wronskian(c, a)
    if not (w_ab == w_bc == w_ca):
        raise InconsistencyError("W(a,b), W(b,c), W(c,a) differ on a zero-sum triple")
    return w_ab


def max3(x: int, y: int, z: int) -> int:
    return max(max(x, y), z)


def _subcall(a: Poly, b: Poly, c: Poly, w: Poly, abc_rad: Poly, abc_divrad: Poly,
             divides_w: bool | None = None) -> int:
    if divides_w is None:
        divides_w = not divmod(w, abc_divrad)[1]
    if not divides_w:
        raise DivisibilityFailure("abc / rad(abc) does not divide W")
    rd = abc_rad.nat_degree
    # deg(abc) - deg rad(abc) <= deg W < deg a + deg b
    if not abc_divrad.nat_degree <= w.nat_degree < a.nat_degree + b.nat_degree:
        raise InconsistencyError("Wronskian degree chain broken")
    if not c.nat_degree + 1 <= rd:
        raise InconsistencyError("subcall bound fails after divisibility held")
    return rd


def ms_subcall_bound(a: Poly, b: Poly, c: Poly, w: Poly) -> int:
    """Derive ``deg c + 1 <= deg rad(abc)`` from ``abc/rad(abc) | w``; return ``deg rad(abc)``."""
    if not w:
        raise ZeroWronskian("w = 0")
    for name, x in (("a", a), ("b", b), ("c", c)):
        if not x:
            raise PreconditionViolated(f"{name} != 0")
    if w != wronskian(a, b):
        raise PreconditionViolated("w = W(a, b)")
    for name, x, y in (("a, b", a, b), ("b, c", b, c), ("c, a", c, a)):
        if not is_coprime(x, y):
            raise PreconditionViolated(f"coprime({name})")
    abc = a * b * c
    rad = radical(abc)
    return _subcall(a, b, c, w, rad, divmod(abc, rad)[0])


def _check_triple(a: Poly, b: Poly, c: Poly):
    for name, x in (("a", a), ("b", b), ("c", c)):
        if not x:
            raise PreconditionViolated(f"{name} != 0")
    if a + b + c:
        raise PreconditionViolated("a + b + c = 0")


def mason_stothers_verdict(a: Poly, b: Poly, c: Poly) -> MsVerdict:
    _check_triple(a, b, c)
    if not is_coprime(a, b):
        raise PreconditionViolated("coprime(a, b)")

    m3 = max3(a.nat_degree, b.nat_degree, c.nat_degree)
    abc = a * b * c
    rad = radical(abc)
    rd = rad.nat_degree
    w = wronskian_common(a, b, c)
    vanish = not (a.derivative() or b.derivative() or c.derivative())

    if not w:
        if not vanish:
            raise InconsistencyError("W = 0 for a coprime triple with a nonzero derivative")
        return MsVerdict(VerdictKind.DERIVATIVES_VANISH, m3, rd)
    if vanish:
        raise InconsistencyError("all derivatives vanish but W != 0")

    margin = rd - m3 - 1
    abc_divrad = divmod(abc, rad)[0]
    divides_w = not divmod(w, abc_divrad)[1]
    try:
        # rotate roles; W(b,c) = W(c,a) = W(a,b) on zero-sum triples
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            _subcall(x, y, z, w, rad, abc_divrad, divides_w)
    except InconsistencyError:
        if margin >= 0:
            raise
        return MsVerdict(VerdictKind.VIOLATION, m3, rd, margin, w.nat_degree)
    if margin < 0:
        raise InconsistencyError("Wronskian route proves the bound the direct route refutes")
    return MsVerdict(VerdictKind.INEQUALITY_HOLDS, m3, rd, margin, w.nat_degree)


def noncoprime_bound(a: Poly, b: Poly, c: Poly) -> MsVerdict:
    """Degree arithmetic of the coprimality-free variant, in any characteristic.

    Compares ``max3`` with ``deg rad(a) + deg rad(b) + deg c``; this is what
    the finite-field search measures, where the variant can fail.
    """
    _check_triple(a, b, c)
    degs = (a.nat_degree, b.nat_degree, c.nat_degree)
    m3 = max3(*degs)
    bound = radical(a).nat_degree + radical(b).nat_degree + c.nat_degree
    if degs == (0, 0, 0):
        return MsVerdict(VerdictKind.ALL_CONSTANT, 0, bound)
    margin = bound - m3 - 1
    kind = VerdictKind.INEQUALITY_HOLDS if margin >= 0 else VerdictKind.VIOLATION
    return MsVerdict(kind, m3, bound, margin)


def ms_noncoprime_verdict_char0(a: Poly, b: Poly, c: Poly) -> MsVerdict:
    """Variant without coprimality, characteristic zero only.

    Follows the reduction by ``d = gcd(a, b)``: the coprime triple
    ``(a/d, b/d, c/d)`` goes through :func:`mason_stothers_verdict`, and the
    resulting inequality is lifted back.  The lifted conclusion is checked
    against :func:`noncoprime_bound`.
    """
    if a.field.characteristic:
        raise WrongCharacteristic("the coprimality-free variant needs characteristic 0")
    direct = noncoprime_bound(a, b, c)

    d = gcd_monic(a, b)
    a0, b0, c0 = a // d, b // d, c // d
    if a0 * d != a or b0 * d != b or c0 * d != c:
        raise InconsistencyError("gcd(a, b) fails to divide c on a zero-sum triple")
    reduced = mason_stothers_verdict(a0, b0, c0)
    if reduced.kind is VerdictKind.DERIVATIVES_VANISH:
        # char 0: a0, b0, c0 are constants, so max3 = deg d
        if d.nat_degree == 0:
            lifted_ok = direct.kind is VerdictKind.ALL_CONSTANT
        else:
            rd = radical(d).nat_degree
            lifted_ok = d.nat_degree < rd + rd + d.nat_degree
    else:
        # max3(abc) = max3(a0 b0 c0) + deg d < rad(a0)+rad(b0)+rad(c0)+deg d
        #           <= rad(a) + rad(b) + deg c0 + deg d
        lhs = reduced.max3_degree + d.nat_degree
        mid = (radical(a0).nat_degree + radical(b0).nat_degree
               + radical(c0).nat_degree + d.nat_degree)
        lifted_ok = lhs < mid <= direct.radical_degree
    if not lifted_ok or direct.kind is VerdictKind.VIOLATION:
        raise InconsistencyError("coprime reduction and direct bound disagree")
    return direct
