"""Exception types shared across the toolkit."""


class IrtExplainError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(IrtExplainError):
    """Bad input data: malformed files, inconsistent shapes, out-of-range values."""


class LabelError(ValidationError):
    """Labels are not the expected binary class indices."""


class DegenerateClassError(ValidationError):
    """A class has too few instances to split or score."""


class AlignmentError(ValidationError):
    """Sequences that must share a length or index order do not."""


class InsufficientDataError(ValidationError):
    """A filtered subset is too small for the requested statistic."""
