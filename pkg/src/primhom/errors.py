"""Exception hierarchy shared by every module."""


class PrimHomError(Exception):
    pass


# group construction
class ClosureBoundExceeded(PrimHomError):
    pass


class NotAssociative(PrimHomError):
    pass


class BadParameters(PrimHomError, ValueError):
    pass


class NotAPGroup(PrimHomError, ValueError):
    pass


# arithmetic / tables
class DivisionByZero(PrimHomError, ZeroDivisionError):
    pass


class PrimeSearchFailed(PrimHomError):
    pass


class InternalNonInteger(PrimHomError):
    """A quantity that must be a rational integer was not (table bug)."""


class SchemaError(PrimHomError, ValueError):
    pass


class OrthogonalityError(PrimHomError, ValueError):
    pass


# search
class StateBudgetExceeded(PrimHomError):
    def __init__(self, msg, visited=None):
        super().__init__(msg)
        self.visited = visited


class NotAnAutomorphism(PrimHomError, ValueError):
    pass


class EmptyWord(PrimHomError, ValueError):
    pass


# verification failures carry the partial report so callers can still print it
class InvariantViolation(PrimHomError, AssertionError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class ChevalleyWeilViolation(InvariantViolation):
    pass


class ExhaustiveCheckFailed(InvariantViolation):
    pass
