"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class UnsupportedColimitShape(ValueError):
    """The normalized colimit is not expressible as a finitely generated
    group or as a single localization of the integers plus torsion."""


class StabilizationOverflow(RuntimeError):
    """A kernel chain failed to stabilize within the hard iteration cap.

    Noetherian stabilization is guaranteed, so hitting this means a bug;
    the cap converts a silent loop into a diagnosable error.
    """


class UnresolvedExtension(RuntimeError):
    """A six-term extension problem could not be resolved soundly.

    Raised instead of guessing when a quotient is neither trivial nor free
    (or is not finitely generated at all). ``partial`` carries whatever was
    already computed, for reporting.
    """

    def __init__(self, message: str, partial: dict | None = None):
        super().__init__(message)
        self.partial = partial or {}


class ParseError(ValueError):
    """Presentation text does not conform to the grammar."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UndeclaredGenerator(ParseError):
    """The relator uses a symbol that was not declared as a generator."""


class ProperPowerRelator(ValueError):
    """The relator is a proper power (or trivial), so the group has torsion
    and the one-vertex two-complex is not an aspherical model."""


class DepthExceeded(ValueError):
    """A solenoid point is not deep enough for the requested operation."""


class UnspecifiedTraceValue(ValueError):
    """The trace is not determined on some generator; refusing to invent
    a value."""
