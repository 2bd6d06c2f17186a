class TricoalgError(Exception):
    """Base class for library errors."""


class UnsupportedConfiguration(TricoalgError):
    """The requested computation is outside the classes this library decides."""


class StructureError(TricoalgError, ValueError):
    """Input data violates a structural law; ``witness`` names where."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InsufficientPrecision(TricoalgError):
    """A truncated computation could not certify its answer at the given precision."""


class SideMismatch(TricoalgError, ValueError):
    pass
