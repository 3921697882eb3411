"""Exception types raised across the library."""


class NrrlsError(Exception):
    """Base class for all library errors."""


class SingularMatrixError(NrrlsError):
    """A pivot fell below the singularity threshold during factorization."""


class LengthMismatchError(NrrlsError):
    """Two sequences that must have equal length do not."""


class DimensionMismatchError(NrrlsError):
    """An array's shape is incompatible with the model dimension."""


class NumericalSingularityError(NrrlsError):
    """An inner inverse factor of the reweighting update is not invertible."""


class ParseError(NrrlsError):
    """A data file could not be parsed; carries 1-based row/col location."""

    def __init__(self, message, row=None, col=None):
        loc = ""
        if row is not None:
            loc = f" (row {row}" + (f", col {col}" if col is not None else "") + ")"
        super().__init__(message + loc)
        self.row = row
        self.col = col


class NonAscendingIndexError(ParseError):
    """Sparse feature indices on a line are not strictly ascending."""


class EmptyFileError(NrrlsError):
    """A data file contains no samples."""


class InsufficientClassSamplesError(NrrlsError):
    """A class has too few samples for the requested split."""


class InvalidRatioError(NrrlsError):
    """Requested class imbalance ratio is not positive."""


class TooFewRecordsError(NrrlsError):
    """Not enough timing records for a stable decile profile."""


class UnknownClassError(NrrlsError):
    """A label does not belong to the fixed class set of a multiclass learner."""
