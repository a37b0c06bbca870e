"""Exception hierarchy shared by all statedisc modules.

Validation errors mean an input broke a documented precondition or
invariant (CLI exit code 2); NumericalFailure means a numerical routine
could not deliver its contract (CLI exit code 3).
"""


class DiscriminationError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(DiscriminationError, ValueError):
    """An input violates a documented precondition or type invariant."""


class NumericalFailure(DiscriminationError):
    """A numerical routine failed to converge or left its tolerance."""


# linear algebra
class NotHermitian(ValidationError):
    pass


class NotPsd(ValidationError):
    pass


class DimensionOverflow(ValidationError):
    pass


# states / ensembles
class DimensionMismatch(ValidationError):
    pass


class TooFewStates(ValidationError):
    pass


class BadRank(ValidationError):
    pass


class EmptyEnsemble(ValidationError):
    pass


class BadPriors(ValidationError):
    pass


# measurements
class CountMismatch(ValidationError):
    pass


# bound formulas
class BadFidelity(ValidationError):
    pass


class BadEpsilon(ValidationError):
    pass


class BadLambda(ValidationError):
    pass


# finite groups
class NotLatinSquare(ValidationError):
    pass


class NoIdentity(ValidationError):
    pass


class NotAssociative(ValidationError):
    pass


class GroupTooLarge(ValidationError):
    pass


class SubgroupMismatch(ValidationError):
    pass


class EmptyList(ValidationError):
    pass


# serialization
class ParseError(ValidationError):
    """A JSON document is structurally malformed or fails an invariant."""
