class HomCalcError(Exception):
    pass


class RegularityError(HomCalcError):
    """An operation needs an invertible twisting map (or a unit) that is absent."""


class DegreeError(HomCalcError, ValueError):
    """A degree or insertion index is outside the range where an operation is defined."""


class HypothesisNotSatisfied(HomCalcError):
    """The hypotheses of a BV construction do not hold for this input."""


class InternalConsistencyError(HomCalcError):
    """A property that should hold by construction failed; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
