"""Exception types shared across the package.

Hard failures (malformed input, impossible requests) raise; structural
verdicts about well-formed input (is this diagram coherent, is this map a
morphism) are returned as report objects instead, see the validate_* helpers.
"""


class DiarepError(Exception):
    pass


# linear algebra
class DimensionMismatch(DiarepError):
    pass


class Inconsistent(DiarepError):
    """A linear system that was required to be solvable has no solution."""


# algebra / module layer
class AlgebraMismatch(DiarepError):
    pass


class InvalidStructure(DiarepError):
    """Construction-time validation of an algebraic structure failed."""


class NotEpi(DiarepError):
    pass


class NotMono(DiarepError):
    pass


# finite categories
class UnknownObject(DiarepError):
    pass


class NotComposable(DiarepError):
    pass


class CyclicQuiver(DiarepError):
    pass


class NonAssociativeTable(DiarepError):
    pass


class MissingIdentity(DiarepError):
    pass


class EmptySet(DiarepError):
    pass


class NotAnIdeal(DiarepError):
    pass


class NotPrime(DiarepError):
    pass


class NotPartiallyOrdered(DiarepError):
    pass


class TooLarge(DiarepError):
    pass


class FunctorMismatch(DiarepError):
    pass


# diagrams and representations
class DiagramMismatch(DiarepError):
    pass


class MissingGenerator(DiarepError):
    pass


class InconsistentRelations(DiarepError):
    pass


class ZeroRepresentation(DiarepError):
    pass


class NotDirect(DiarepError):
    pass


class NotInverse(DiarepError):
    pass


class NotProjective(DiarepError):
    pass


class NotInjective(DiarepError):
    pass


# cli / workspace
class ParseError(DiarepError):
    """Malformed workspace text. Carries the line (and column when known)."""

    def __init__(self, message, line=None, col=None):
        at = ""
        if line is not None:
            at = f"line {line}: " if col is None else f"line {line}, col {col}: "
        super().__init__(f"{at}{message}")
        self.line = line
        self.col = col


class UnresolvedReference(DiarepError):
    pass


class ValidationFailure(DiarepError):
    """A loaded object failed its validator; carries the full report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnknownCommand(DiarepError):
    pass


class SizeBoundExceeded(DiarepError):
    pass
