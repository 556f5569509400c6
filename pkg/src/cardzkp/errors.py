"""Exception hierarchy shared by every module."""


class CardZKError(Exception):
    """Base class for all package errors."""


class RangeError(CardZKError, ValueError):
    """A number lies outside the range its encoding allows."""


class MalformedSequenceError(CardZKError, ValueError):
    """A card sequence does not hold exactly one heart."""


class MalformedRowError(MalformedSequenceError):
    """Row 1 of a proof matrix revealed zero or several hearts."""


class VisibilityError(CardZKError, RuntimeError):
    """The face of a face-down card was requested without sealed access."""


class DimensionError(CardZKError, ValueError):
    """Sequence widths or matrix indices do not fit together."""


class ProtocolOrderError(CardZKError, RuntimeError):
    """A card operation was invoked in a state the protocol forbids."""


class InstanceError(CardZKError, ValueError):
    """A puzzle, graph, filling or path set violates its invariants."""


class VariantMismatchError(InstanceError):
    """The witness does not fit the requested protocol variant."""


class SizeGuardError(CardZKError, RuntimeError):
    """A brute-force search was refused because the instance is too large."""


class FormatError(CardZKError, ValueError):
    """A text file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
