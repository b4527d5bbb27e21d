"""Exception hierarchy shared by all modules."""


class CCompleteError(Exception):
    """Base class for every error raised by the library."""


class InputError(CCompleteError):
    """Malformed input: bad dimensions, syntax, or out-of-range arguments."""


class NumericError(CCompleteError):
    """A computation could not be carried out to the required accuracy."""


class ConditioningError(NumericError):
    pass


class EmptyDomainError(InputError):
    """The log-image of a domain (or a polytope) has empty interior."""


class NotBoundaryPointError(InputError):
    pass


class SignConditionError(NumericError):
    """Averaged supporting normal is negative on a coordinate whose axis meets the closure."""


class DiophantineExhaustedError(NumericError):
    def __init__(self, message, k=None):
        super().__init__(message)
        self.k = k


class EpsilonTooLargeError(NumericError):
    def __init__(self, message, suggested_eps):
        super().__init__(message)
        self.suggested_eps = suggested_eps


class CertificateViolation(NumericError):
    """A certified premise (e.g. |f_k| < 1 + eps_k) fails at an evaluated point."""

    def __init__(self, message, point=None, k=None):
        super().__init__(message)
        self.point = point
        self.k = k
