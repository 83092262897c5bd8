"""Exception types shared across the package."""


class BfenumError(Exception):
    """Base class for every error this package raises on purpose."""


# truth tables

class LengthMismatch(BfenumError):
    """Truth table length does not match 2**arity, or a bad bit value."""


class ZeroArity(BfenumError):
    """Functions must take at least one argument."""


class ArityMismatch(BfenumError):
    """Argument count does not match the function or connective arity."""


class BadThreshold(BfenumError):
    """Threshold parameters must satisfy p > q >= 2."""


class TooLarge(BfenumError):
    """Instance exceeds a hard size guard (table rows, brute-force vars)."""


# bases and classification

class EmptyBase(BfenumError):
    """A connective base must contain at least one function."""


class ArityBudget(BfenumError):
    """Closure computation would exceed its arity or work budget."""


# formulas

class FormulaSyntaxError(BfenumError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownConnective(BfenumError):
    pass


class UnboundVariable(BfenumError):
    pass


class BaseMismatch(BfenumError):
    """Replacement formula uses connectives outside the allowed base."""


class NotBinary(BfenumError):
    pass


# structural preconditions certified by the classifier

class NotSeparating(BfenumError):
    pass


class NotAffine(BfenumError):
    pass


class NotMonotone(BfenumError):
    pass


class NotSelfDual(BfenumError):
    pass


class NotDeg2(BfenumError):
    pass


# weights

class WeightOverflow(BfenumError):
    """Total weight would not fit in a signed 64-bit accumulator."""


class MissingWeight(BfenumError):
    """A variable of the formula has no entry in the weight function."""


# enumeration

class RuleViolation(BfenumError):
    """A successor rule produced a non-solution (debug assertion)."""


class Intractable(BfenumError):
    """The requested problem is NP-hard for this base."""

    def __init__(self, tag):
        super().__init__(f"NP-hard ({tag})")
        self.tag = tag


class OpenCase(BfenumError):
    """No polynomial-delay algorithm is known for this base and order."""


class EKRViolation(BfenumError):
    """A weight level is smaller than its guaranteed lower bound.

    This cannot happen for a correctly certified base; it signals a
    classifier bug, so it is raised loudly instead of being worked around.
    """


# gadget construction

class SizeGuard(BfenumError):
    """Gadget output would be unreasonably large."""


class PaddingInfeasible(BfenumError):
    pass


class RepresentationMissing(BfenumError):
    pass


class MissingEntry(BfenumError):
    """A representation dictionary lacks a required connective."""
