"""
Exception hierarchy shared by the library, the CLI and the HTTP routers.

Every error carries a stable machine-readable ``code`` and a human readable
``detail``. Boundaries (cli.py, routers) turn them into ``{error, detail}``
payloads.
"""

from typing import Optional


class TwistAlgError(Exception):
    code = "twistalg_error"

    def __init__(self, detail: str, code: Optional[str] = None):
        super().__init__(detail)
        self.detail = detail
        if code is not None:
            self.code = code

    def to_payload(self) -> dict:
        return {"error": self.code, "detail": self.detail}


class FieldError(TwistAlgError):
    code = "field_error"


class ExpressionError(TwistAlgError):
    """Malformed scalar, point or matrix in the command-line mini-grammar."""
    code = "expression_error"


class ProjectiveError(TwistAlgError):
    code = "projective_error"


class CurveError(TwistAlgError):
    code = "curve_error"


class SingularCurveError(CurveError):
    code = "singular_curve"


class TowerTooSmallError(TwistAlgError):
    """The declared tower lacks roots that a computation needs."""
    code = "tower_too_small"

    def __init__(self, detail: str, missing_polynomial: Optional[str] = None):
        super().__init__(detail)
        self.missing_polynomial = missing_polynomial

    def to_payload(self) -> dict:
        payload = super().to_payload()
        if self.missing_polynomial is not None:
            payload["missing_polynomial"] = self.missing_polynomial
        return payload


class RelationError(TwistAlgError):
    code = "relation_error"


class SigmaUndeterminedError(TwistAlgError):
    code = "sigma_undetermined"


class ParameterError(TwistAlgError):
    code = "parameter_error"


class ClassificationError(TwistAlgError):
    code = "classification_error"


class InsufficientSamplesError(TwistAlgError):
    code = "insufficient_samples"
