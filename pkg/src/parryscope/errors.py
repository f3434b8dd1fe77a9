"""Exception hierarchy, shared across modules and mapped to CLI exit codes."""


class ParryscopeError(Exception):
    """Base class for all library errors."""


class EmptyWordError(ParryscopeError):
    """An operation that needs a non-empty word received the empty word."""


class TrailingZeroError(ParryscopeError):
    """A candidate expansion of 1 ends in the digit 0."""


class ParryViolation(ParryscopeError):
    """A candidate expansion of 1 fails the Parry admissibility condition.

    ``index`` is the 1-based position of the offending suffix.
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"Parry condition fails at suffix index {index}")


class DigitRangeError(ParryscopeError):
    """A digit exceeds the alphabet bound for the base."""


class MixedBaseError(ParryscopeError):
    """Arithmetic attempted between elements over different bases."""


class NonIntegerExpansionError(ParryscopeError):
    """A beta-expansion with fractional digits where a beta-integer is required."""


class FractionalBudgetExceeded(ParryscopeError):
    """Greedy expansion did not terminate within the fractional digit budget.

    ``partial`` holds the expansion with the digits found so far.
    """

    def __init__(self, partial, message=None):
        self.partial = partial
        super().__init__(message or "fractional digit budget exceeded")


class InadmissibleInput(ParryscopeError):
    """A digit string that should denote a beta-integer is not admissible."""


class ZeroHasNoPredecessor(ParryscopeError):
    """The beta-integer 0 has no predecessor in the non-negative part."""


class LetterRangeError(ParryscopeError):
    """A letter lies outside the alphabet of the substitution."""


class BudgetExceeded(ParryscopeError):
    """Factor sets did not stabilize within the prefix budget."""

    def __init__(self, message=None, partial=None):
        self.partial = partial
        super().__init__(message or "prefix budget exceeded before stabilization")


class NotApplicable(ParryscopeError):
    """The witness construction does not apply (the word is affine).

    ``reason`` is ``"affine"`` or ``"tm_not_one"``.
    """

    def __init__(self, reason, message=None):
        self.reason = reason
        super().__init__(message or f"witness construction not applicable: {reason}")


class DigitwiseSubtractionFailed(ParryscopeError):
    """Digit-wise subtraction produced a negative digit (indicates a bug)."""


class VerificationFailed(ParryscopeError):
    """A witness verification condition failed (indicates a bug).

    ``condition`` is one of ``"i"``, ``"ii"``, ``"iii"``, ``"iv"``.
    """

    def __init__(self, condition, message=None):
        self.condition = condition
        super().__init__(message or f"witness verification condition ({condition}) failed")


class UsageError(ParryscopeError):
    """Command line usage or parse error."""
