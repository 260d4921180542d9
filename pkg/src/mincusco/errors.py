"""Exception types shared by every module."""

from __future__ import annotations

from typing import Any


class AnalysisError(ValueError):
    """Base class for rejected inputs. ``witness`` carries the offending point, if any."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class DomainError(AnalysisError):
    """A point lies outside X, or two objects live on different spaces."""


class PreconditionError(AnalysisError):
    """An operation's input violates its stated precondition."""


class GameError(AnalysisError):
    """An illegal move or an out-of-turn tactic call."""

    def __init__(
        self, message: str, witness: Any = None, round_index: int | None = None
    ):
        super().__init__(message, witness)
        self.round_index = round_index
