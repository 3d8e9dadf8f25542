"""Exception hierarchy shared across the package."""


class EntwineError(Exception):
    pass


class FieldMismatchError(EntwineError):
    pass


class ShapeMismatchError(EntwineError):
    pass


class DegreeError(EntwineError):
    pass


class InconsistentQuotientError(EntwineError):
    pass


class ValidationError(EntwineError):
    """Raised when an axiom validator fails; carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BowTieError(ValidationError):
    pass


class InternalConsistencyError(EntwineError):
    pass


class CocycleConditionError(EntwineError):
    pass


class MissingTranslationMapError(EntwineError):
    pass


class PreconditionError(EntwineError):
    pass


class StructureParseError(EntwineError):
    pass
