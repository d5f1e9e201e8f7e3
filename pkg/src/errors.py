"""Exceptions raised by the extreme-rates modules."""


class ExtremeRatesError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ExtremeRatesError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class NumericalError(ExtremeRatesError, ArithmeticError):
    """A solver or quadrature did not reach its tolerance.

    The ``diagnostics`` dict records where and how it failed.
    """

    def __init__(self, message: str, diagnostics: dict = None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})

    def __str__(self):
        base = super().__str__()
        if not self.diagnostics:
            return base
        details = ", ".join(f"{k}={v!r}" for k, v in self.diagnostics.items())
        return f"{base} ({details})"
