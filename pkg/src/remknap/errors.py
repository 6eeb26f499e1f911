"""Exception hierarchy shared by every module of the package."""


class RemKnapError(Exception):
    """Base class for all package errors."""


class RuleViolation(RemKnapError):
    """A policy asked for a move the online rules forbid.

    ``kind`` is ``"capacity"`` or ``"unknown-removal"``.
    """

    def __init__(self, kind, message, step=None):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.step = step


class AdviceExhausted(RemKnapError):
    """A policy tried to read past the end of its advice tape."""


class MalformedCode(RemKnapError):
    """An advice bit string does not decode."""


class DomainError(RemKnapError, ValueError):
    """A parameter lies outside the documented domain."""


class TooLarge(RemKnapError):
    """An exact search was asked to run beyond its size limit."""


class DuplicateInstance(RemKnapError, ValueError):
    """Two instances of a family have identical item sequences."""
