import pytest
from hypothesis import given, strategies as st

from helpers import FIELDS, polys
from polyabc.abc import (
    VerdictKind,
    mason_stothers_verdict,
    max3,
    ms_noncoprime_verdict_char0,
    ms_subcall_bound,
    noncoprime_bound,
    wronskian,
    wronskian_common,
    wronskian_degree_bound_holds,
)
from polyabc.errors import (
    DivisibilityFailure,
    InconsistencyError,
    NotZeroSum,
    PreconditionViolated,
    WrongCharacteristic,
    ZeroWronskian,
)
from polyabc.field import GF, Q
from polyabc.poly import Poly, divides, is_coprime
from polyabc.radical import div_radical, radical

tQ = Poly.t(Q)
one = Poly.one(Q)


def test_wronskian_examples():
    assert wronskian(tQ, tQ + 1) == -one
    assert not wronskian(tQ**2 + 3, tQ**2 + 3)
    assert wronskian(tQ**2, tQ + 1) == -(tQ**2) - 2 * tQ
    assert wronskian_degree_bound_holds(tQ**2, tQ + 1)
    assert wronskian_degree_bound_holds(tQ, one)
    with pytest.raises(ZeroWronskian):
        wronskian_degree_bound_holds(tQ, tQ)


def test_wronskian_common_examples():
    assert wronskian_common(tQ**2, 1 - tQ**2, -one) == -2 * tQ
    assert not wronskian_common(one, one, -2 * one)
    with pytest.raises(NotZeroSum):
        wronskian_common(tQ, -tQ, one)


def test_verdict_examples():
    v = mason_stothers_verdict(tQ**2, 1 - tQ**2, -one)
    assert (v.kind, v.max3_degree, v.radical_degree, v.margin) == (
        VerdictKind.INEQUALITY_HOLDS, 2, 3, 0)
    assert v.tight
    t5 = Poly.t(GF(5))
    v = mason_stothers_verdict(-Poly.one(GF(5)), -(t5**5), 1 + t5**5)
    assert (v.kind, v.max3_degree, v.radical_degree) == (VerdictKind.DERIVATIVES_VANISH, 5, 2)
    with pytest.raises(PreconditionViolated) as info:
        mason_stothers_verdict(tQ, tQ, -2 * tQ)
    assert info.value.hypothesis == "coprime(a, b)"


@pytest.mark.parametrize("a, b, c, hyp", [
    (Poly.zero(Q), tQ, -tQ, "a != 0"),
    (tQ, Poly.zero(Q), -tQ, "b != 0"),
    (tQ, one, tQ, "a + b + c = 0"),
])
def test_verdict_preconditions(a, b, c, hyp):
    with pytest.raises(PreconditionViolated) as info:
        mason_stothers_verdict(a, b, c)
    assert info.value.hypothesis == hyp


def test_subcall_examples():
    assert ms_subcall_bound(tQ**2, 1 - tQ**2, -one, -2 * tQ) == 3
    assert ms_subcall_bound(-one, tQ**2, 1 - tQ**2, wronskian(-one, tQ**2)) == 3
    with pytest.raises(ZeroWronskian):
        ms_subcall_bound(one, one, -2 * one, Poly.zero(Q))
    with pytest.raises(PreconditionViolated):
        ms_subcall_bound(tQ**2, 1 - tQ**2, -one, tQ)


def test_noncoprime_examples():
    v = ms_noncoprime_verdict_char0(tQ**3, tQ - tQ**3, -tQ)
    assert v.kind is VerdictKind.INEQUALITY_HOLDS and (v.max3_degree, v.radical_degree) == (3, 5)
    assert ms_noncoprime_verdict_char0(one, one, -2 * one).kind is VerdictKind.ALL_CONSTANT
    t3 = Poly.t(GF(3))
    with pytest.raises(WrongCharacteristic):
        ms_noncoprime_verdict_char0(t3, -t3 + 1, Poly.const(GF(3), -1))
    v = noncoprime_bound(t3**4, -t3 - t3**4, t3)
    assert v.kind is VerdictKind.VIOLATION and (v.max3_degree, v.radical_degree) == (4, 4)


def test_max3():
    assert max3(1, 5, 3) == 5


def test_forced_disagreement_raises(monkeypatch):
    # a divisibility failure with a nonnegative margin is an internal inconsistency
    import polyabc.abc as abc_mod

    def broken(*args, **kwargs):
        raise DivisibilityFailure("injected")

    monkeypatch.setattr(abc_mod, "_subcall", broken)
    with pytest.raises(InconsistencyError):
        mason_stothers_verdict(tQ**2, 1 - tQ**2, -one)


def test_forced_negative_margin_raises(monkeypatch):
    # the Wronskian route succeeding while the direct degree says otherwise must raise
    import polyabc.abc as abc_mod

    monkeypatch.setattr(abc_mod, "radical", lambda p: Poly.one(p.field))
    monkeypatch.setattr(abc_mod, "_subcall", lambda *a, **k: 0)
    with pytest.raises(InconsistencyError):
        mason_stothers_verdict(tQ**2, 1 - tQ**2, -one)


@st.composite
def zero_sum_triples(draw, coprime=True):
    field = draw(st.sampled_from(FIELDS))
    a = draw(polys(field, 6, nonzero=True))
    b = draw(polys(field, 6, nonzero=True))
    c = -(a + b)
    if not c or (coprime and not is_coprime(a, b)):
        a, b = Poly.t(field), Poly.t(field) + 1
        c = -(a + b)
    return a, b, c


@given(zero_sum_triples())
def test_verdict_classification(triple):
    a, b, c = triple
    v = mason_stothers_verdict(*triple)
    vanish = not (a.derivative() or b.derivative() or c.derivative())
    assert v.max3_degree == max(x.nat_degree for x in triple)
    assert v.radical_degree == radical(a * b * c).nat_degree
    assert (v.kind is VerdictKind.DERIVATIVES_VANISH) == vanish
    assert v.kind is not VerdictKind.VIOLATION
    if v.kind is VerdictKind.INEQUALITY_HOLDS:
        assert v.margin == v.radical_degree - v.max3_degree - 1 >= 0
    # invariant under rotation and scaling
    for x, y, z in ((b, c, a), (c, a, b)):
        assert mason_stothers_verdict(x, y, z).kind is v.kind
    lam = a.field.convert(3) or a.field.one
    assert mason_stothers_verdict(a.scale(lam), b.scale(lam), c.scale(lam)) == v


@given(zero_sum_triples())
def test_wronskian_chain(triple):
    a, b, c = triple
    w = wronskian_common(a, b, c)
    assert w == wronskian(b, c) == wronskian(c, a)
    if w:
        assert w.nat_degree < a.nat_degree + b.nat_degree
        assert divides(div_radical(a * b * c), w)
        assert ms_subcall_bound(a, b, c, w) == radical(a * b * c).nat_degree


@given(zero_sum_triples(coprime=False).filter(lambda t: not t[0].field.modulus))
def test_noncoprime_char0_never_violates(triple):
    v = ms_noncoprime_verdict_char0(*triple)
    assert v.kind in (VerdictKind.INEQUALITY_HOLDS, VerdictKind.ALL_CONSTANT)
    assert v == noncoprime_bound(*triple)
