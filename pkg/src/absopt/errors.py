"""Exception taxonomy shared by every module.

Four failure classes: bad input data, exceeded enumeration budgets, violated
caller contracts, and internal guarantees that did not hold (always a bug).
"""

from __future__ import annotations


class InvalidInstanceError(ValueError):
    """The instance data is malformed (bad literal, tautology, bad bounds)."""


class BudgetExceededError(RuntimeError):
    """An enumeration or expansion exceeded its configured cap."""


class ContractViolationError(ValueError):
    """A precondition of the called operation does not hold."""


class InternalGuaranteeError(AssertionError):
    """A proven guarantee failed at runtime; signals an implementation bug."""


class ParseError(ValueError):
    """A file could not be parsed; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
