"""Exception hierarchy shared by every polyabc module."""


class PolyAbcError(Exception):
    """Base class for all library errors."""


class NotPrime(PolyAbcError, ValueError):
    pass


class FieldMismatch(PolyAbcError, TypeError):
    pass


class DivisionByZero(PolyAbcError, ZeroDivisionError):
    pass


class BothZero(PolyAbcError, ValueError):
    pass


class ZeroPolynomial(PolyAbcError, ValueError):
    pass


class NotCharP(PolyAbcError, ValueError):
    pass


class DerivativeNonzero(PolyAbcError, ValueError):
    pass


class ZeroWronskian(PolyAbcError, ValueError):
    pass


class NotZeroSum(PolyAbcError, ValueError):
    pass


class WrongCharacteristic(PolyAbcError, ValueError):
    pass


class CubeEqualsSquare(PolyAbcError, ValueError):
    pass


class NotAssociated(PolyAbcError, ValueError):
    pass


class ExponentsNotCoprime(PolyAbcError, ValueError):
    pass


class NotFiniteField(PolyAbcError, ValueError):
    pass


class ConfigError(PolyAbcError, ValueError):
    pass


class PreconditionViolated(PolyAbcError, ValueError):
    """A theorem checker was called on inputs outside its hypotheses.

    ``hypothesis`` names the failing hypothesis (``"coprime(a, b)"``,
    ``"a + b + c = 0"``, ...) so harness callers can tally rejections.
    """

    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        self.detail = detail
        msg = f"hypothesis failed: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class InconsistencyError(PolyAbcError, AssertionError):
    """Two independent computations of the same fact disagreed.

    Raised only when the library contradicts itself; on correct code and
    valid inputs it is unreachable.
    """


class DivisibilityFailure(InconsistencyError):
    pass


class TheoremViolated(PolyAbcError):
    """A counterexample to a proven theorem was found (a disproof witness)."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class PolySyntaxError(PolyAbcError, ValueError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at offset {position}")


class LiteralOutOfField(PolyAbcError, ValueError):
    pass
