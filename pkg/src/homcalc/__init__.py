"""Exact Hochschild (co)homology, calculus and BV structures for hom-associative algebras."""

from homcalc.algebra import HomAlgebra, dual_bimodule, validate, yau_twist
from homcalc.errors import (DegreeError, HomCalcError, HypothesisNotSatisfied,
                            InternalConsistencyError, RegularityError)
from homcalc.homology import Hochschild

__version__ = "0.1.0"

__all__ = ["HomAlgebra", "Hochschild", "dual_bimodule", "validate", "yau_twist",
           "HomCalcError", "RegularityError", "DegreeError", "HypothesisNotSatisfied",
           "InternalConsistencyError"]
