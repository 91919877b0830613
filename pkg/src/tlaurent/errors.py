"""Exception types shared across the package."""


class TLaurentError(Exception):
    """Base class for all errors raised by this package."""


class NonPrimeCharacteristic(TLaurentError):
    pass


class ReducibleModulus(TLaurentError):
    pass


class FieldMismatch(TLaurentError):
    pass


class DivisionByZeroPoly(TLaurentError):
    pass


class AllZero(TLaurentError):
    pass


class ZeroPolynomial(TLaurentError):
    pass


class BeyondHorizon(TLaurentError):
    """A coefficient past the known horizon was requested and no generator exists."""


class NotAPowerOfCharacteristic(TLaurentError):
    pass


class NotAPthPower(TLaurentError):
    pass


class PrecisionExhausted(TLaurentError):
    """Adaptive refinement hit its cap without resolving an absolute value."""


class ExponentBudgetExceeded(TLaurentError):
    pass


class BudgetExceeded(TLaurentError):
    pass


class HorizonTooSmall(TLaurentError):
    pass


class RecursionCapExceeded(TLaurentError):
    pass


class IndistinguishableAtHorizon(TLaurentError):
    pass


class ZeroValueWitness(TLaurentError):
    """A small-value witness evaluated to zero through the refinement cap.

    Carries the witness polynomial; this signals that the scanned series is
    (or is indistinguishable from) an algebraic element of low degree.
    """

    def __init__(self, witness, message="witness value vanished through the refinement cap"):
        super().__init__(message)
        self.witness = witness


class ConfigError(TLaurentError):
    pass
