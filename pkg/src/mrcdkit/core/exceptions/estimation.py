"""
Errors raised while standardizing, building targets and fitting the estimators.
"""

from typing import Any, Dict, Optional

from .base import MrcdkitException


class EstimationException(MrcdkitException):
    error_code = "ESTIMATION_ERROR"
    error_message = "Estimation failed"


class DegenerateVariableError(EstimationException):
    """A column has zero robust scale: more than half of its values are tied."""

    exit_code = 3
    error_code = "DEGENERATE_VARIABLE_ERROR"
    error_message = "degenerate variable"

    def __init__(self, column: Optional[str] = None, column_index: Optional[int] = None, **kwargs: Any):
        super().__init__(column=column, column_index=column_index, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        label = details.get("column", details.get("column_index"))
        return f"degenerate variable {label}: Qn scale is zero" if label is not None else None


class InvalidSubsetSizeError(EstimationException):
    exit_code = 4
    error_code = "INVALID_SUBSET_SIZE_ERROR"
    error_message = "Invalid subset size h"

    def __init__(self, h: Optional[int] = None, n: Optional[int] = None, **kwargs: Any):
        super().__init__(h=h, n=n, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        if "h" not in details or "n" not in details:
            return None
        return f"Subset size h={details['h']} must satisfy n/2 <= h <= n (n={details['n']})"


class TargetValidationError(EstimationException):
    """Target matrix not symmetric, not positive definite, or too ill-conditioned."""

    error_code = "TARGET_VALIDATION_ERROR"
    error_message = "Invalid target matrix"

    def __init__(
        self,
        reason: Optional[str] = None,
        condition_number: Optional[float] = None,
        min_eigenvalue: Optional[float] = None,
        **kwargs: Any,
    ):
        super().__init__(reason=reason, condition_number=condition_number, min_eigenvalue=min_eigenvalue, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        return f"Invalid target matrix: {details['reason']}" if "reason" in details else None


class SingularScatterError(EstimationException):
    """Unregularized (rho = 0) scatter with a zero eigenvalue."""

    error_code = "SINGULAR_SCATTER_ERROR"
    error_message = "singular, regularization required"

    def __init__(self, rho: Optional[float] = None, min_eigenvalue: Optional[float] = None, **kwargs: Any):
        super().__init__(rho=rho, min_eigenvalue=min_eigenvalue, **kwargs)
