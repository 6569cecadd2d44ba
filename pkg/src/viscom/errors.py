"""Exception types shared across the toolkit."""


class ViscomError(Exception):
    """Base class for all toolkit errors."""


class MissingFile(ViscomError):
    """A required bundle file is absent; the message names the file."""


class SchemaViolation(ViscomError):
    """An input file violates its schema; the message names field and rule."""


class DimensionMismatch(ViscomError):
    """Screenshot dimensions disagree with the recorded render geometry."""


class EmptyDocument(ViscomError):
    """The HTML input was zero bytes long."""


class UnknownMeasure(ViscomError):
    """Aesthetic measure id outside 1..13."""


class WrongArity(ViscomError):
    """A fixed-arity operation received the wrong number of values."""


class ProviderFailure(ViscomError):
    """An embedding provider returned an unusable response."""


class DegenerateDistribution(ViscomError):
    """Knowledge-gain values have zero spread; z-scores are undefined."""


class LengthMismatch(ViscomError):
    """Paired series have different lengths."""


class BadK(ViscomError):
    """Fold count outside the valid range for the given sample size."""


class DegenerateTraining(ViscomError):
    """A class is absent from the training split."""


class DegenerateSample(ViscomError):
    """A t-test sample has zero variance."""


class ConfigError(ViscomError):
    """An experiment configuration is invalid."""
