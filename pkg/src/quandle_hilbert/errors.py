"""Exception types.

Domain errors derive from :class:`QuandleError`; resource-limit errors derive
from :class:`ResourceError` (itself a ``QuandleError``) so callers can tell a
bad input from a computation that was merely too large.
"""
from __future__ import annotations


class QuandleError(Exception):
    """Base class for all domain errors raised by this package."""

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class InvalidTable(QuandleError, ValueError):
    """Operation table has the wrong shape or out-of-range entries."""


class AxiomViolation(QuandleError):
    def __init__(self, axiom: str, witness: tuple[int, ...]):
        self.axiom = axiom
        self.witness = tuple(int(v) for v in witness)
        names = ("x", "y", "z")
        where = ", ".join(f"{n}={v}" for n, v in zip(names, self.witness))
        super().__init__(f"axiom {axiom} fails at {where}")

    def to_dict(self) -> dict:
        return {"error": "AxiomViolation", "axiom": self.axiom, "witness": list(self.witness)}


class NotAGroup(QuandleError):
    def __init__(self, axiom: str, witness: tuple[int, ...] = ()):
        self.axiom = axiom
        self.witness = tuple(int(v) for v in witness)
        super().__init__(f"not a group: {axiom} fails at {self.witness}")


class NotAMorphism(QuandleError):
    def __init__(self, x: int, y: int):
        self.witness = (x, y)
        super().__init__(f"map does not respect the operation at x={x}, y={y}")


class NotAutomorphism(QuandleError):
    pass


class TwistConditionViolated(QuandleError):
    def __init__(self, x: int):
        self.x = x
        super().__init__(f"row of psi({x}) differs from row of {x}")


class EmptyQuandle(QuandleError):
    pass


class UnknownName(QuandleError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class IndexOutOfRange(QuandleError, IndexError):
    pass


class FitError(QuandleError):
    pass


class InsufficientData(FitError):
    pass


class DegreeMismatch(FitError):
    def __init__(self, detected: int, expected: int):
        self.detected = detected
        self.expected = expected
        super().__init__(f"fitted degree {detected}, expected {expected}")


class NoStablePolynomial(FitError):
    pass


class InconsistentFit(FitError):
    pass


class ResourceError(QuandleError):
    """A configured size or budget limit was hit."""


class BudgetExceeded(ResourceError):
    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{needed} states exceed the budget of {budget}")


class TooLarge(ResourceError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"size {size} exceeds the hard cap {cap}")


class GroupTooLarge(ResourceError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"group order exceeds the cap {cap}")


class StateSpaceTooLarge(ResourceError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"state space of size {size} exceeds {cap}")
