"""Exception hierarchy shared by every module of the package."""


class GSKError(Exception):
    """Base class for all errors raised by gsk."""


class DescriptorMismatchError(GSKError, ValueError):
    """Two elements (or an element and an operation) belong to different groups."""


class DomainError(GSKError, ValueError):
    """A parameter lies outside the domain of the group or operation."""


class UnknownEmbeddingError(GSKError, KeyError):
    """No embedding is registered between the requested groups."""


class InvalidSampleCountError(GSKError, ValueError):
    pass


class CocycleError(GSKError, ValueError):
    """An exponent failed the 2-cocycle identity."""


class ChartSingularityError(GSKError, ValueError):
    """A dual point lies on the singular set of the requested orbit chart."""


class DimensionMismatchError(GSKError, ValueError):
    pass


class DomainTruncationError(GSKError, ValueError):
    """A vector has non-negligible mass outside the quadrature box."""


class NotClosedError(GSKError, ValueError):
    """The requested action leaves the quadratic-exponential class."""


class NonSeparableError(GSKError, ValueError):
    pass


class InadmissibleWindowError(GSKError, ValueError):
    pass


class MarginalUndefinedError(GSKError, ValueError):
    pass


class SignalParseError(GSKError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
