"""Exception types. Each carries a short machine-readable ``code``."""


class ExpdomError(Exception):
    code = "ERROR"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self), "details": self.details}


class SizeLimitError(ExpdomError):
    code = "SIZE_LIMIT"


class BadStepError(ExpdomError):
    code = "BAD_STEP"


class NoStepError(ExpdomError):
    code = "NO_STEP"


class DomainError(ExpdomError):
    code = "DOMAIN"


class NonpositiveKError(ExpdomError):
    code = "NONPOSITIVE_K"


class AdjustmentViolation(ExpdomError):
    code = "ADJUSTMENT_VIOLATION"


class SolverError(ExpdomError):
    """Raised when a pipeline needs an optimal LP and the solver did not produce one."""

    code = "SOLVER"
