"""
Verification reports.

A :class:`VerificationReport` records both sides of a checked relation, the
residuals, the tolerance that was applied and how the computation was
truncated. Reports are immutable and serialise to JSON lines.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Iterable, Optional
import math

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from .enums import IdentityId, Precision
from .qcore import QBase

__all__ = [
    "Truncation",
    "VerificationReport",
    "compare",
    "params_record",
    "report_sort_key",
    "sort_reports",
    "reports_to_frame",
]

_TINY = 1e-300


class Truncation(BaseModel):
    """
    How a report's values were truncated.

    Fields
    ------
    precision
        Arithmetic mode of the scalar evaluations.
    dps
        Decimal digits in extended mode, None in double mode.
    series_terms
        Terms used by non-terminating sums (Euler sums, lattice sums).
    integral_terms
        Nodes used by q-integrals.
    dimension
        Truncation size of matrices, when a matrix is involved.
    tail_bound
        Bound on the neglected tails, added over all truncated sums.
    notes
        Free-form remarks (e.g. automatic precision upgrades).
    """

    precision: Precision = Precision.DOUBLE
    dps: Optional[int] = None
    series_terms: int = Field(default=0, ge=0)
    integral_terms: int = Field(default=0, ge=0)
    dimension: Optional[int] = None
    tail_bound: float = Field(default=0.0, ge=0.0)
    notes: tuple[str, ...] = ()

    model_config = ConfigDict(frozen=True, extra="forbid")

    @classmethod
    def for_base(cls, base: QBase, **kwargs: Any) -> "Truncation":
        dps = base.dps if base.precision is Precision.EXTENDED else None
        return cls(precision=base.precision, dps=dps, **kwargs)


class VerificationReport(BaseModel):
    """
    Outcome of checking one relation at one parameter record.

    ``passed`` holds when the relative residual is within ``tolerance``, or
    when both sides are smaller than ``tolerance`` and so is their difference.
    """

    identity_id: IdentityId
    params: dict[str, Any]
    lhs: float
    rhs: float
    abs_residual: float = Field(..., ge=0.0)
    rel_residual: float = Field(..., ge=0.0)
    tolerance: float = Field(..., gt=0.0)
    passed: bool
    truncation: Truncation

    model_config = ConfigDict(frozen=True, extra="forbid")


def _plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return float(value)


def params_record(**params: Any) -> dict[str, Any]:
    """Parameter record with enums, mpmath scalars and tuples made JSON-friendly."""
    return {key: _plain(value) for key, value in params.items()}


def compare(
    identity_id: IdentityId,
    params: dict[str, Any],
    lhs: Any,
    rhs: Any,
    tolerance: float,
    truncation: Truncation,
    *,
    scale: Any = None,
) -> VerificationReport:
    """
    Build a report from two sides computed in any scalar context.

    Residuals are formed before the sides are rounded to floats. The relative
    residual divides by ``max(|lhs|, |rhs|, scale, 1e-300)``.
    """
    difference = abs(lhs - rhs)
    denominator = max(abs(lhs), abs(rhs), _TINY)
    if scale is not None:
        denominator = max(denominator, abs(scale))
    abs_residual = float(difference)
    rel_residual = float(difference / denominator)
    small_sides = abs(lhs) < tolerance and abs(rhs) < tolerance
    passed = rel_residual <= tolerance or (small_sides and abs_residual <= tolerance)
    if math.isnan(rel_residual):
        passed = False
        rel_residual = math.inf
    return VerificationReport(
        identity_id=identity_id,
        params=params,
        lhs=float(lhs),
        rhs=float(rhs),
        abs_residual=abs_residual if not math.isnan(abs_residual) else math.inf,
        rel_residual=rel_residual,
        tolerance=tolerance,
        passed=passed,
        truncation=truncation,
    )


def _sortable(value: Any) -> tuple:
    if isinstance(value, bool):
        return (0, float(value), "")
    if isinstance(value, (int, float)):
        return (0, float(value), "")
    return (1, 0.0, str(value))


def report_sort_key(report: VerificationReport) -> tuple:
    return (
        report.identity_id.value,
        tuple((key, _sortable(report.params[key])) for key in sorted(report.params)),
    )


def sort_reports(reports: Iterable[VerificationReport]) -> list[VerificationReport]:
    """Deterministic order: by identity, then by parameter record."""
    return sorted(reports, key=report_sort_key)


def reports_to_frame(reports: Iterable[VerificationReport]) -> pd.DataFrame:
    """Flatten reports into a table, parameters prefixed with ``param_``."""
    rows = []
    for report in reports:
        row = {
            "identity_id": report.identity_id.value,
            "lhs": report.lhs,
            "rhs": report.rhs,
            "abs_residual": report.abs_residual,
            "rel_residual": report.rel_residual,
            "tolerance": report.tolerance,
            "passed": report.passed,
            "precision": report.truncation.precision.value,
            "series_terms": report.truncation.series_terms,
            "integral_terms": report.truncation.integral_terms,
            "dimension": report.truncation.dimension,
        }
        row.update({f"param_{key}": value for key, value in report.params.items()})
        rows.append(row)
    return pd.DataFrame(rows)
