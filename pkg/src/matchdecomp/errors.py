"""Exception types shared across the package."""


class MarketError(Exception):
    """Base class for all errors raised by this package."""


class MarketValidationError(MarketError):
    """Malformed input: bad market data, bad matching, bad file contents."""


class AxiomViolationError(MarketError):
    """An operation required a choice-function axiom that does not hold."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class CapExceededError(MarketError):
    """A resource cap (universe size, order count, candidate count) was hit."""


class DecompositionMismatchError(MarketValidationError):
    """A supplied order family does not reproduce the firm's choice function."""


class FirmRationalityError(MarketValidationError):
    """A many-to-one matching cannot be split across copies because some
    firm's assigned set is not what that firm would choose from it."""
