"""Exception hierarchy shared by every module."""


class QuiverFoldError(Exception):
    """Base class; carries a short machine-friendly payload."""

    def __init__(self, message: str = "", **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        out = {"error": type(self).__name__, "message": str(self)}
        out.update({k: v for k, v in self.details.items() if v is not None})
        return out


class ParseError(QuiverFoldError):
    pass


class NotAPermutation(QuiverFoldError):
    pass


class IncompatibleWithIncidence(QuiverFoldError):
    pass


class NotAdmissible(QuiverFoldError):
    pass


class NotSigmaFixed(QuiverFoldError):
    pass


class DivisionByZero(QuiverFoldError, ZeroDivisionError):
    pass


class BudgetExceeded(QuiverFoldError):
    pass


class SizeCapExceeded(BudgetExceeded):
    pass


class SearchCapExceeded(BudgetExceeded):
    pass


class NonIntegralCentralizer(QuiverFoldError):
    pass


class NonIntegralCount(QuiverFoldError):
    pass


class InterpolationMismatch(QuiverFoldError):
    pass


class NotARoot(QuiverFoldError):
    pass


class HeightExceeded(QuiverFoldError):
    pass


class NotNormalized(QuiverFoldError):
    pass


class NotDynkin(QuiverFoldError):
    pass


class LabelCollision(QuiverFoldError):
    pass
