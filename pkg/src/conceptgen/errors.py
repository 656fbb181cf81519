"""Exception types shared across the toolkit."""


class ConceptGenError(Exception):
    """Base class for all toolkit errors."""


class PairFormatError(ConceptGenError):
    """A dataset record could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class InsufficientData(ConceptGenError):
    """A frequency stratum is too small for the requested test sample."""


class EmptySentence(ConceptGenError):
    """A sentence has no content tokens to score."""


class NoVerbFound(ConceptGenError):
    """Role parsing requires at least one verb token."""


class EmptyDataset(ConceptGenError):
    """Training requires a nonempty dataset."""


class ShapeMismatch(ConceptGenError):
    """Model configuration and vocabulary are inconsistent."""


class VocabularyMismatch(ConceptGenError):
    """Continued training received pairs outside the model vocabulary contract."""


class EmptyBatch(ConceptGenError):
    """Metric computation requires a nonempty batch."""


class ControlFormatError(ConceptGenError):
    """A serialized control sequence is malformed; carries the item position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"item {position}: {message}")
        self.position = position


class StageFailure(ConceptGenError):
    """A pipeline stage failed; carries the stage name for resumption."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage {stage}: {message}")
        self.stage = stage


class StatusTransitionError(ConceptGenError):
    """An item status change violates the PENDING-only transition rule."""
