"""Exception types shared by the position-code modules."""


class PositionCodeError(Exception):
    """Base class for all errors raised by this package."""


class GridBoundsError(PositionCodeError, IndexError):
    """A grid access or window extraction fell outside the grid."""


class PbmParseError(PositionCodeError, ValueError):
    """A PBM file could not be parsed; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InfeasibleLengthError(PositionCodeError, ValueError):
    """Requested sequence length exceeds the number of distinct windows."""


class SearchExhaustedError(PositionCodeError):
    """The exhaustive sequence search ended without finding a solution."""


class WindowNotFoundError(PositionCodeError, LookupError):
    """A window is not present in the sequence it was looked up in."""


class SingularMatrixError(PositionCodeError, ValueError):
    """Matrix inversion over GF(2) failed: the matrix is singular."""


class DecodeError(PositionCodeError):
    """Base class for decode failures; ``stage`` names the failed step."""

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage


class CorruptedWindowError(DecodeError):
    """A window fragment failed a sequence lookup during decoding."""


class InvalidDifferenceError(DecodeError):
    """A column-phase difference fell outside the allowed 5..58 range."""


class NotRasnikWindowError(DecodeError):
    """No offset/parity hypothesis is consistent with the window."""


class AmbiguousWindowError(DecodeError):
    """More than one decoding survives; ``candidates`` lists them all."""

    def __init__(self, message, candidates):
        super().__init__(message)
        self.candidates = list(candidates)


class NotMeshWindowError(DecodeError):
    """The window is not a cut of the mesh pattern."""
