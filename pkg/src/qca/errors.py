"""Exception types.

Mathematical failures (a condition that does not hold) are reported, not
raised. Exceptions are reserved for malformed input and for operations
that have no result.
"""


class QCAError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(QCAError, ValueError):
    pass


class MalformedInput(QCAError, ValueError):
    pass


class NotSkewSymmetrizable(QCAError, ValueError):
    pass


class DivisionByZero(QCAError, ZeroDivisionError):
    pass


class NotDivisible(QCAError, ArithmeticError):
    pass


class DirectionOutOfRange(QCAError, IndexError):
    pass


class NotCompatible(QCAError, ValueError):
    """Raised when a seed fails its eager construction check (C1 or C1*)."""


class NotIntegralOmega(QCAError, ValueError):
    def __init__(self, i, j, msg=None):
        self.i, self.j = i, j
        super().__init__(msg or f"lambda_{i}{j} does not divide W_{i}{j}")


class NotSecondDeformation(QCAError, ValueError):
    def __init__(self, i, j, msg=None):
        self.i, self.j = i, j
        super().__init__(msg or f"omega_{i}{j} does not give an integer W entry")


class TwoParameterUnsupported(QCAError, ValueError):
    pass


class NotLogCanonical(QCAError, ArithmeticError):
    """The bracket {X'_k, X_j} is not a scalar multiple of X'^{e_k+e_j}.

    ``residual`` is the torus element bracket - omega' * v^{lambda'_jk} X'_k X_j
    for the best candidate omega', i.e. a certificate of failure.
    """

    def __init__(self, residual, msg=None):
        self.residual = residual
        super().__init__(msg or "cluster is not log-canonical after mutation")


class NotIndecomposable(QCAError, ValueError):
    pass


class NoNonzeroP(QCAError, RuntimeError):
    pass


class SignCoherenceViolation(QCAError, RuntimeError):
    pass


class SizeBound(QCAError, ValueError):
    pass
