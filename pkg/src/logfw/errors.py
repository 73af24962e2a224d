"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class LogFWError(Exception):
    pass


class InputError(LogFWError, ValueError):
    """Malformed or mathematically invalid input (CLI exit code 1)."""


class BudgetError(LogFWError, RuntimeError):
    """A configured search or size budget was exhausted (CLI exit code 2)."""


class NonLiftableCoefficient(InputError):
    pass


class NotAHomomorphism(InputError):
    pass


class NotLocalPrelog(InputError):
    pass


class PointNotOnVariety(InputError):
    pass


class UnsupportedMonoid(InputError):
    pass


class UnsupportedInstance(InputError):
    pass


class InstanceError(InputError):
    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class SearchBudgetExceeded(BudgetError):
    pass


class BudgetExceeded(BudgetError):
    pass


class OracleTooLarge(BudgetError):
    pass


class SectionVerificationFailed(LogFWError, AssertionError):
    """A lifted section failed its membership check; indicates a bug."""
