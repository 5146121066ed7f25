"""Exception types raised by shapesplit.

The command line front end maps these onto exit codes: parse errors exit 1,
validation errors exit 2, algorithm failures exit 3.
"""


class ShapeSplitError(Exception):
    """Base class for all shapesplit errors."""


class PGMParseError(ShapeSplitError, ValueError):
    """Malformed portable graymap input.

    ``offset`` holds the byte position where parsing failed, when known.
    """

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)


class ValidationError(ShapeSplitError, ValueError):
    """An input violates an operation's preconditions."""


class AlgorithmError(ShapeSplitError, RuntimeError):
    """A pipeline stage could not produce a valid result for this input."""


class CutError(AlgorithmError):
    """A perpendicular cut failed to separate the working region."""


class BalanceError(AlgorithmError):
    """Area balancing could not reach equal-area regions."""
