"""Exception types raised across the package."""


class RankRangeError(Exception):
    """Base class for every error raised by this package."""


class CompositeModulus(RankRangeError, ValueError):
    pass


class ModulusTooLarge(RankRangeError, ValueError):
    pass


class DivisionByZero(RankRangeError, ZeroDivisionError):
    pass


class FieldMismatch(RankRangeError, ValueError):
    pass


class ShapeError(RankRangeError, ValueError):
    pass


class SchurNotApplicable(RankRangeError):
    """Both diagonal blocks are singular; use a direct determinant instead."""


class InvalidParams(RankRangeError, ValueError):
    pass


class BudgetExceeded(RankRangeError):
    """An enumeration would visit more elements than allowed.

    ``cost`` carries the estimated number of elements (or candidate
    element evaluations) the request would need.
    """

    def __init__(self, message, cost=None, budget=None):
        super().__init__(message)
        self.cost = cost
        self.budget = budget


class CharTwoUnsupported(RankRangeError, ValueError):
    pass


class NotSkew(RankRangeError, ValueError):
    pass


class FieldTooSmall(RankRangeError):
    pass


class EmptyInput(RankRangeError, ValueError):
    pass


class DegenerateCode(RankRangeError, ValueError):
    pass
