"""Exception hierarchy.

Errors fall into three families that the command line maps to exit codes:
``InvalidInput`` (bad data, exit 3), ``ConventionError`` (an internal
consistency assertion failed, exit 2) and ``BudgetExceeded`` (exit 4).
"""

from __future__ import annotations


class SurfsecError(Exception):
    pass


class InvalidInput(SurfsecError):
    pass


class ConventionError(SurfsecError):
    pass


class BudgetExceeded(SurfsecError):
    pass


# exact field / linear algebra
class DivisionByZero(ZeroDivisionError, InvalidInput):
    pass


class DimensionMismatch(InvalidInput):
    pass


class SingularMatrix(InvalidInput):
    pass


class Inconsistent(InvalidInput):
    pass


# groups and representations
class NotAGroup(InvalidInput):
    pass


class ClosureTooLarge(InvalidInput):
    pass


class NotAutomorphism(InvalidInput):
    pass


class UnsupportedGroup(InvalidInput):
    pass


class ValidationFailed(InvalidInput):
    pass


class IncompleteIrreps(InvalidInput):
    pass


# extensions, counting, state sums
class RelationViolated(InvalidInput):
    pass


class NotSurjective(InvalidInput):
    pass


class InvalidGSystem(InvalidInput):
    pass


class NotScalar(ConventionError):
    pass


class NonIntegralResult(ConventionError):
    pass


class NegativeResult(ConventionError):
    pass


class MatchFailed(ConventionError):
    pass
