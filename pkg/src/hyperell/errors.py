"""Exception hierarchy.

Every precondition violation raised by the library derives from
:class:`HyperellError`, so the CLI can map them to a single exit code.
"""


class HyperellError(Exception):
    """Base class for all library errors."""


class ZeroInput(HyperellError):
    pass


class DivisionByZero(HyperellError, ZeroDivisionError):
    pass


class BadCharacteristic(HyperellError):
    pass


class DegenerateInput(HyperellError):
    pass


class SingularMatrix(HyperellError):
    pass


class DegenerateTriple(HyperellError):
    pass


class DegenerateConfiguration(HyperellError):
    pass


class TooFewPoints(HyperellError):
    pass


class PreconditionViolated(HyperellError):
    pass


class WrongDegree(HyperellError):
    pass


class NotDivisible(HyperellError):
    pass


class ImpossibleCase(HyperellError):
    pass


class NotInStabilizer(HyperellError):
    pass


class InternalInconsistency(HyperellError):
    """An identity that the theory guarantees has failed."""


class NegativeDegree(HyperellError):
    pass


class NonSplitForm(HyperellError):
    pass


class NotFinite(HyperellError):
    pass


class ExcludedJ(HyperellError):
    pass


class BoundExceeded(HyperellError):
    """Input too large for a bounded exact algorithm (e.g. trial division)."""


class FieldMismatch(HyperellError, TypeError):
    pass
