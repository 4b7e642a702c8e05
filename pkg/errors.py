"""
Exception hierarchy

Every error carries an exit code so the command-line layer can map failures
without inspecting messages.
"""

from typing import Any, Dict, Optional


class ReesLabError(Exception):
    """Base class for all library errors"""
    exit_code = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self) -> str:
        if not self.details:
            return self.message
        extra = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{self.message} ({extra})"


# ============ INPUT ERRORS (exit 2) ============

class InputError(ReesLabError):
    exit_code = 2


class PolynomialParseError(InputError):
    """Polynomial text could not be parsed in the given ring"""


class InputDocumentError(InputError):
    """Input document is missing, malformed, or inconsistent"""


class RingMismatchError(InputError):
    """Operands live in different rings"""


# ============ PRECONDITION ERRORS (exit 3) ============

class PreconditionError(ReesLabError):
    exit_code = 3


class NotHomogeneousError(PreconditionError):
    pass


class MixedDegreeColumnError(PreconditionError):
    pass


class RankError(PreconditionError):
    """Module lacks the rank structure an operation needs"""


class HilbertBurchError(PreconditionError):
    """Matrix does not have Hilbert-Burch shape, rank, or height"""


class BourbakiError(PreconditionError):
    pass


class JacobianDualError(PreconditionError):
    pass


class ParameterRangeError(PreconditionError):
    pass


# ============ COMPUTATION ERRORS (exit 1) ============

class ComputationError(ReesLabError):
    exit_code = 1


class InternalConsistencyError(ComputationError):
    """A re-verified identity failed"""


class StabilizationError(ComputationError):
    """Iterated Jacobian dual chain did not stabilize within the level budget"""


class ReductionNumberError(ComputationError):
    """Reduction number search exceeded its bound"""


class ReportWriteError(ReesLabError):
    """The --json report could not be written"""
    exit_code = 1
