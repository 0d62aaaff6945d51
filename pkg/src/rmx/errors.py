"""Exception types shared across the package."""

from __future__ import annotations


class RmxError(Exception):
    """Base class for all errors raised by :mod:`rmx`."""


class ParseError(RmxError, ValueError):
    """Malformed textual input. ``position`` is the 0-based offending column."""

    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)


class SpecMismatchError(RmxError, ValueError):
    """Operands belong to different group presentations or sides."""


class ConductorMismatchError(RmxError, ValueError):
    """Cyclotomic operands live in different fields Q(zeta_N)."""


class NotBicharacterError(RmxError, ValueError):
    """A function table failed the bicharacter test.

    ``witness`` is the lexicographically first offending point: an ``(a, b)``
    pair for a zero value, or an ``(a, b, c)`` triple for a multiplicativity
    failure. ``law`` names the failed condition.
    """

    def __init__(self, message: str, law: str, witness: tuple):
        self.law = law
        self.witness = witness
        super().__init__(message)


class NotInvertibleError(RmxError, ZeroDivisionError):
    """An element has no inverse; ``witness`` is a point where its function vanishes."""

    def __init__(self, message: str, witness: tuple | None = None):
        self.witness = witness
        super().__init__(message)


class InternalConsistencyError(RmxError, AssertionError):
    """A mathematical identity that must hold for valid input was violated.

    This signals a bug in the library, never bad user input.
    """
