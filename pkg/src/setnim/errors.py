"""Exception types shared across the package."""

from __future__ import annotations


class SetNimError(Exception):
    """Base class for all errors raised by this package."""


class GameParameterError(SetNimError, ValueError):
    """A game family was requested with parameters outside its bounds."""


class IllegalMoveError(SetNimError, ValueError):
    """A move violates one of the move invariants; the message names it."""


class DomainError(SetNimError, ValueError):
    """An operation was called on a game or position outside its domain."""


class BudgetExceededError(SetNimError, RuntimeError):
    """An exhaustive search exceeded its configured resource budget.

    This always signals that the sweep was too large, never a wrong answer.
    """


class StrategyError(SetNimError, RuntimeError):
    """The strategy machinery could not certify a move it was asked for."""
