"""Exception types raised by the engine.

Every error carries enough context to report the failure without access to
the raising call's locals (row numbers, offending values, key names).
"""

from __future__ import annotations


class SonigridError(Exception):
    """Base class for all engine errors."""


class MalformedRowError(SonigridError):
    """A CSV data row could not be parsed into three numeric fields."""

    def __init__(self, row_index: int, line: str, reason: str = "") -> None:
        self.row_index = row_index
        self.line = line
        msg = f"malformed row {row_index}: {line!r}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class NonFiniteValueError(SonigridError):
    """A parsed coordinate was NaN or infinite."""

    def __init__(self, row_index: int, column: str, value: float) -> None:
        self.row_index = row_index
        self.column = column
        self.value = value
        super().__init__(f"non-finite {column} value {value!r} at row {row_index}")


class EmptyDatasetError(SonigridError):
    """The source contained a header but no data rows."""


class InvalidParamsError(SonigridError):
    """Synthetic-surface parameters are out of range or inconsistent."""


class EmptyRectangleError(SonigridError):
    """Focus was requested for a grid cell that holds no points.

    Navigation skips empty cells, so reaching this state means the cursor
    and the grid disagree; it is an internal-consistency failure, not a
    user error.
    """


class NoRectanglesError(SonigridError):
    """Peak detection was asked to run on a grid with no occupied cells."""


class NoPeaksError(SonigridError):
    """Jump mode could not find any peaks to cycle through."""


class ConfirmWithoutAnchorError(SonigridError):
    """Enter pressed to confirm a selection that was never anchored."""


class EmptyBufferError(SonigridError):
    """An aggregation or ordering was requested on a buffer with no items."""


class NoBufferStoredError(SonigridError):
    """Playback was requested before any region selection was confirmed."""


class OutOfRangeError(SonigridError):
    """A normalized mapping input fell outside [0, 1]."""

    def __init__(self, name: str, value: float) -> None:
        self.name = name
        self.value = value
        super().__init__(f"{name}={value!r} outside [0, 1]")


class BadSampleRateError(SonigridError):
    """Sample rate below the supported minimum."""


class EmptyGridError(SonigridError):
    """A sweep was requested over a grid with no occupied cells."""


class DatasetLoadError(SonigridError):
    """A dataset path or builtin name could not be resolved and parsed."""
