"""
DUALFRENET Errors
Exception hierarchy shared by every engine. The class name is the structured
error name reported by the CLI.
"""

from typing import Any, Dict, Optional


class DualFrenetError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details: Dict[str, Any] = dict(details or {})

    @property
    def name(self) -> str:
        return type(self).__name__

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.name, "message": str(self), "details": self.details}


# ── Dual algebra ────────────────────────────────────────────────────────────

class PureDualDivisor(DualFrenetError):
    """Raised when dividing by a dual number with zero real part."""
    pass


class NonPositiveRealPart(DualFrenetError):
    """Raised when a Taylor lift needs a positive real part (sqrt)."""
    pass


class AngleSingularity(DualFrenetError):
    """Raised when the dual part of an angle cannot be recovered (parallel directions)."""
    pass


class NumericBreakdown(DualFrenetError):
    """Raised when NaN or Inf appears at an operation boundary."""
    pass


# ── Dual vectors and lines ──────────────────────────────────────────────────

class ZeroRealPart(DualFrenetError):
    """Raised when the norm of a dual vector with vanishing real part is requested."""
    pass


class InvalidLine(DualFrenetError):
    """Raised when a line direction is not a unit vector."""
    pass


class NotOnDualSphere(DualFrenetError):
    """Raised when a dual vector violates dual unit sphere membership."""
    pass


# ── Curves ──────────────────────────────────────────────────────────────────

class IrregularCurve(DualFrenetError):
    """Raised when the real speed of a curve vanishes."""
    pass


class VanishingCurvature(DualFrenetError):
    """Raised when the Frenet frame is undefined because the real curvature vanishes."""
    pass


class InvalidCurveDefinition(DualFrenetError):
    """Raised when a curve or profile definition is malformed."""
    pass


# ── Synthesis ───────────────────────────────────────────────────────────────

class ProfileSingularity(DualFrenetError):
    """Raised when a prescribed curvature profile is not positive."""
    pass


class StepTooLarge(DualFrenetError):
    """Raised when frame drift per integration step exceeds the drift tolerance."""
    pass


# ── Mannheim pairs ──────────────────────────────────────────────────────────

class PureDualLambda(DualFrenetError):
    """Raised when the Mannheim offset constant has zero real part."""
    pass


class DegeneratePartner(DualFrenetError):
    """Raised when an offset curve collapses (zero real speed)."""
    pass


class NoCorrespondence(DualFrenetError):
    """Raised when the point correspondence between two curves is not monotone."""
    pass


class PairValidationFailed(DualFrenetError):
    """Raised when a generated pair does not pass the Mannheim checks."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        if self.report is not None:
            data["report"] = self.report.to_dict()
        return data


# ── Ruled surfaces ──────────────────────────────────────────────────────────

class InvalidPatch(DualFrenetError):
    """Raised when a ruled surface patch violates its invariants."""
    pass


# ── CLI input ───────────────────────────────────────────────────────────────

class InputError(ValueError):
    """Raised when CLI input files or flags are malformed."""
    pass
