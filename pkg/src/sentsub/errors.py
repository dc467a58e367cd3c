"""Exception types shared across the package."""


class SentsubError(Exception):
    """Base class for all package errors."""


class EmbeddingFormatError(SentsubError):
    """Malformed or inconsistent embedding file."""


class DatasetFormatError(SentsubError):
    """Malformed STS dataset, gold-score, or manifest file."""


class UnrepresentableSentenceError(SentsubError):
    """Sentence has no in-vocabulary tokens after filtering."""


class ZeroNormAverageError(SentsubError):
    """Average vector has zero norm; cosine undefined."""


class DimensionMismatchError(SentsubError):
    """Operands live in embedding spaces of different dimension."""


class NumericalError(SentsubError):
    """Numerical computation failed or produced out-of-range values."""


class ZeroVarianceError(NumericalError):
    """Pearson correlation undefined: one of the inputs is constant."""


# Errors that make a single pair unscoreable (skipped with counts, never imputed).
UNSCOREABLE_ERRORS = (UnrepresentableSentenceError, ZeroNormAverageError)
