"""Exception hierarchy shared by every module."""


class ASMomentsError(Exception):
    """Base class for library errors."""


class RejectedParameterError(ASMomentsError, ValueError):
    """Input violates a documented precondition."""


class NonCoprimeModulusError(ASMomentsError, ValueError):
    """A modulus shares a factor with a denominator where coprimality is required."""


class PoleError(ASMomentsError, ZeroDivisionError):
    """Evaluation at a pole of a rational expression."""


class UnsupportedRamificationError(ASMomentsError, ValueError):
    """A pole order is divisible by the characteristic."""


class InternalConsistencyError(ASMomentsError, AssertionError):
    """An internal invariant failed; signals a bug or a wrong degree guess."""


class FunctionalEquationViolation(ASMomentsError, AssertionError):
    """Coefficients do not satisfy the functional equation."""


class CorrespondenceViolation(ASMomentsError, AssertionError):
    """A character/curve correspondence clause failed."""


class TheoryViolation(ASMomentsError, AssertionError):
    """Two independent routes to the same quantity disagree."""


class NumericalFailure(ASMomentsError, ArithmeticError):
    """A numerical routine did not converge."""


class BudgetExceeded(ASMomentsError, RuntimeError):
    """Estimated work exceeds the configured budget."""

    def __init__(self, message, estimate=None, budget=None, done=0):
        super().__init__(message)
        self.estimate = estimate
        self.budget = budget
        self.done = done


class NonFieldConfiguration(ASMomentsError, ValueError):
    """The radical ring is not a field for the requested parameters."""
