"""Exception hierarchy shared by every module of the package."""


class PvitauError(Exception):
    """Base class for all package errors."""


class NonExactDivision(PvitauError):
    """Raised when a polynomial division leaves a nonzero remainder.

    The remainder is kept on the exception so callers can report it.
    """

    def __init__(self, remainder, message=None):
        self.remainder = remainder
        super().__init__(message or f"division is not exact, remainder {remainder}")


class NonIntegralInput(PvitauError):
    pass


class ConstantPolynomial(PvitauError):
    pass


class DivisionByZeroFunction(PvitauError, ZeroDivisionError):
    pass


class PoleEvaluation(PvitauError, ZeroDivisionError):
    pass


class ParameterPole(PvitauError):
    """A parameter value hits a pole of a coefficient formula."""


class DegenerateQ(PvitauError):
    pass


class DegenerateTransformation(PvitauError):
    pass


class RiccatiViolation(PvitauError):
    pass


class ChartViolation(PvitauError):
    pass


class SequenceTooShort(PvitauError):
    pass


class SampleAtFactorZero(PvitauError):
    pass
