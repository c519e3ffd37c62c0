"""Exception hierarchy shared by all zetacycle modules."""


class ZetaCycleError(Exception):
    """Base class for every error raised by this package."""


# --- numerics --------------------------------------------------------------

class DomainError(ZetaCycleError, ValueError):
    """Argument outside the domain of the function."""


class NumericError(ZetaCycleError, ArithmeticError):
    """A numerical method failed to deliver the requested accuracy."""


class NoConvergence(NumericError):
    pass


class AccuracyLoss(NumericError):
    pass


class PhasePrecisionLoss(NumericError):
    pass


class TermComputationError(NumericError):
    """Wraps a special-function failure with the global zero index."""

    def __init__(self, index, cause):
        self.index = index
        self.cause = cause
        super().__init__(f"zero #{index}: {cause}")

    def __reduce__(self):
        return (type(self), (self.index, self.cause))


# --- zero tables -----------------------------------------------------------

class CatalogError(ZetaCycleError, ValueError):
    pass


class ParseError(CatalogError):
    def __init__(self, message, line=None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)

    def __reduce__(self):
        return (type(self), (self.message, self.line))


class EmptyTable(CatalogError):
    pass


class NonConsecutiveIndex(ParseError):
    pass


class MonotonicityViolation(CatalogError):
    def __init__(self, index, previous, value):
        self.index = index
        self.previous = previous
        self.value = value
        super().__init__(
            f"ordinate #{index} ({value!r}) is not greater than #{index - 1} ({previous!r})"
        )

    def __reduce__(self):
        return (type(self), (self.index, self.previous, self.value))


class NotFromFirstZero(CatalogError):
    pass


class FirstZeroMismatch(CatalogError):
    pass


class IndexOutOfRange(CatalogError, IndexError):
    pass


class FetchError(ZetaCycleError):
    pass


class NetworkError(FetchError):
    pass


class UrlNotAllowed(NetworkError):
    pass


class IntegrityError(FetchError):
    pass


# --- analysis --------------------------------------------------------------

class AnalysisError(ZetaCycleError, ValueError):
    pass


class BadWindow(AnalysisError):
    pass


class TooShort(AnalysisError):
    pass


class DegenerateData(AnalysisError):
    pass


class ConfigError(ZetaCycleError):
    pass
