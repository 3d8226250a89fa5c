"""Exception taxonomy shared by every module."""


class InterpLabError(Exception):
    """Base class for all library errors."""


class DomainError(InterpLabError, ValueError):
    """Input outside the mathematical domain (point off the disk, bad kernel coefficients)."""


class ArgumentError(InterpLabError, ValueError):
    """Structurally invalid arguments: duplicate points, size mismatches, empty data."""


class NumericError(InterpLabError, ArithmeticError):
    """A numerical routine produced an unusable result."""


class BudgetError(InterpLabError, RuntimeError):
    """An iteration, bracket, or enumeration budget was exhausted."""
