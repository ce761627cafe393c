"""Exception hierarchy shared by all modules."""


class ChargeQubitError(Exception):
    """Base class for every error raised by :mod:`chargequbits`."""


class NumericalError(ChargeQubitError):
    """A numerical routine could not produce a trustworthy result."""


class NotHermitian(NumericalError, ValueError):
    pass


class NoConvergence(NumericalError):
    pass


class NotPSD(NumericalError, ValueError):
    pass


class DimMismatch(ChargeQubitError, ValueError):
    pass


class BadSubset(ChargeQubitError, ValueError):
    pass


class UnknownLabel(ChargeQubitError, KeyError):
    pass


class StepTooLarge(NumericalError, ValueError):
    pass


class DuplicateLabel(ChargeQubitError, ValueError):
    pass


class DegenerateDenominator(NumericalError, ZeroDivisionError):
    pass


class NonpositiveJ(ChargeQubitError, ValueError):
    pass


class NonpositiveInput(ChargeQubitError, ValueError):
    pass


class PeakNotFound(NumericalError):
    pass


class ConfigError(ChargeQubitError):
    """Raised for any problem with an experiment configuration."""


class ParseError(ConfigError):
    """Malformed configuration text, located by ``line`` and/or ``field``."""

    def __init__(self, message, line=None, field=None):
        self.message = message
        self.line = line
        self.field = field
        super().__init__(message)

    def __str__(self):
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.field is not None:
            where.append(f"field {self.field!r}")
        return f"{self.message} ({', '.join(where)})" if where else self.message


class ValidationError(ConfigError, ValueError):
    pass


class MissingArtifact(ChargeQubitError, FileNotFoundError):
    pass
