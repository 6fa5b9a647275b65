"""Exception types shared across the package."""


class NlhError(Exception):
    """Base class for all package errors."""


class AlphabetError(NlhError):
    """A symbol is not part of the alphabet, or the alphabet is malformed."""


class NotLyndonError(NlhError):
    """A word that must be Lyndon-Shirshov is not."""


class OrderingConflictError(NlhError):
    """A leading-word contract failed; the chosen prime order does not
    support the requested construction."""


class StepBudgetError(NlhError):
    """Reduction exhausted its step budget.  This signals suspicion of
    nontermination and cannot happen when the relation set passed a
    Groebner-Shirshov check."""


class PreconditionError(NlhError):
    """An operation was called outside its documented domain."""


class AlgebraFileError(NlhError):
    """An algebra description file is malformed."""


class ExprSyntaxError(NlhError):
    """Expression text failed to parse; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SpecInvalidError(NlhError):
    """Structure constants failed validation; carries the reports."""

    def __init__(self, message, reports=None):
        super().__init__(message)
        self.reports = reports or []
