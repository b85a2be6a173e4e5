"""
Verification event model for the synchronous event dispatch system.

A :class:`VerificationEvent` is an immutable record of something that
happened while a suite was running.
"""

from typing import Any, Optional
import time, uuid

from pydantic import BaseModel, ConfigDict, Field

from .enums import VerificationEventType
from .report import VerificationReport

__all__ = ["VerificationEvent"]


class VerificationEvent(BaseModel):
    """
    Immutable verification event payload.

    Payload by event type:
    - SUITE_COMPLETED:
        - reports: int - Number of reports the suite produced.
        - failed: int - Number of reports that did not pass.

    Fields
    ------
    type : VerificationEventType
        The type of event that occurred.
    suite : Optional[str]
        Name of the running suite.
    report : Optional[VerificationReport]
        The report, for REPORT_CREATED and REPORT_FAILED.
    payload : dict[str, Any]
        Additional event-specific data.
    """

    id: str = Field(default_factory=lambda: uuid.uuid4().hex)
    ts: float = Field(default_factory=time.time)
    type: VerificationEventType

    suite: Optional[str] = None
    report: Optional[VerificationReport] = None

    payload: dict[str, Any] = Field(default_factory=dict)

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
    )
