"""Exceptions raised when a structure fails one of its defining identities.

Every failure carries the basis indices where it was detected so reports
can point at a concrete witness.
"""


class CoringError(Exception):
    """Base class for all errors raised by this package."""


class ShapeMismatch(CoringError, ValueError):
    pass


class VerificationError(CoringError):
    """An identity that should hold exactly does not."""

    def __init__(self, *witness, detail: str = ""):
        self.witness = witness
        self.detail = detail
        msg = f"{type(self).__name__}{witness if witness else ''}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)

    @property
    def name(self) -> str:
        return type(self).__name__


class NotAssociative(VerificationError):
    pass


class UnitLawFails(VerificationError):
    pass


class NotMultiplicative(VerificationError):
    pass


class NotUnital(VerificationError):
    pass


class LeftActionNotRingAction(VerificationError):
    pass


class RightActionNotRingAction(VerificationError):
    pass


class ActionsDontCommute(VerificationError):
    pass


class NotBimoduleMap(VerificationError):
    pass


class NotCoassociative(VerificationError):
    pass


class CounitLawFails(VerificationError):
    pass


class TensorPresentationError(VerificationError):
    pass


class PreconditionFails(VerificationError):
    pass


class ExtractionFailed(VerificationError):
    pass


class SystemRejected(VerificationError):
    """A Frobenius certificate failed independent re-verification."""

    def __init__(self, report):
        self.report = report
        bad = report.first_failure
        super().__init__(bad.clause if bad else "?", detail=str(bad) if bad else "")


class RingMismatch(CoringError, ValueError):
    pass


class MiddleRingMismatch(RingMismatch):
    pass


class NotASweedlerCoring(CoringError, ValueError):
    pass


class DimensionBudgetExceeded(CoringError):
    def __init__(self, k: int, dim: int, budget: int):
        self.k, self.dim, self.budget = k, dim, budget
        super().__init__(f"level {k} has dimension {dim} > budget {budget}")
