from __future__ import annotations

from typing import Iterable, Optional, Union
import logging
import os

from .enums import Suite, VerificationEventType
from .eventbus import EventBus
from .events import VerificationEvent
from .exceptions import QLegendreError
from .protocol import EventHandler
from .report import VerificationReport, sort_reports
from ._registered_suites import registered_suites
from .suites import SuiteConfig

__all__ = ["VerificationRunner"]


class VerificationRunner:
    """
    Runs verification suites and dispatches their reports as events.

    Parameters
    ----------
    exc_handling_mode : {"log", "raise"}
        If "raise", exceptions in event handlers propagate. If "log", they are
        logged. Exceptions raised by the suites themselves always propagate.
    log_events : bool
        If True, every report is logged with a coloured PASS/FAIL prefix
        (set ``NO_COLOR`` to disable the colours).
    """

    def __init__(self, *, exc_handling_mode: str = "log", log_events: bool = True):
        if exc_handling_mode not in ["log", "raise"]:
            raise ValueError("exc_handling_mode must be 'log' or 'raise'")
        self._logger = logging.getLogger("qlegendre")
        self._log_events = log_events
        self._events = EventBus(strict=exc_handling_mode == "raise")
        self._event_history: list[VerificationEvent] = []

    @property
    def history(self) -> list[VerificationEvent]:
        """All events emitted so far, in chronological order."""
        return self._event_history

    def _log(self, message: str, passed: Optional[bool] = None, loglevel: int = logging.INFO) -> None:
        if not self._log_events:  # pragma: no cover
            return
        if passed is None:
            self._logger.log(loglevel, message)
            return
        label = "PASS" if passed else "FAIL"
        if not os.environ.get("NO_COLOR"):
            color = "\033[38;5;34m" if passed else "\033[38;5;196m"  # green / red
            label = f"{color}{label}\033[0m"
        self._logger.log(loglevel, f"{label} | {message}")

    def subscribe(self, event_type: VerificationEventType, handler: EventHandler, **kwargs) -> str:
        """
        Register a handler for an event type.

        Keyword arguments (``priority``, ``once``, ``mask``) are passed to
        :meth:`EventBus.subscribe`.
        """
        return self._events.subscribe(event_type, handler, **kwargs)

    def unsubscribe(self, token: str) -> None:
        """Unsubscribe a handler using its subscription token."""
        return self._events.unsubscribe(token)

    def _emit(self, event: VerificationEvent) -> None:
        self._event_history.append(event)
        self._events.emit(event, self)

    def _create_event(
        self,
        event_type: VerificationEventType,
        suite: Optional[str] = None,
        report: Optional[VerificationReport] = None,
        payload: Optional[dict] = None,
    ) -> VerificationEvent:
        return VerificationEvent(type=event_type, suite=suite, report=report, payload=payload or {})

    def _suite_names(self, suite: Union[Suite, str]) -> list[str]:
        name = suite.value if isinstance(suite, Suite) else suite
        if name == Suite.ALL.value:
            return [s.value for s in Suite if s is not Suite.ALL and registered_suites.get(s.value)]
        if registered_suites.get(name) is None:
            raise QLegendreError(f"unknown suite {name!r}")
        return [name]

    def consume(self, name: str, reports: Iterable[VerificationReport]) -> list[VerificationReport]:
        """Emit events for a stream of reports belonging to suite ``name``."""
        self._emit(self._create_event(VerificationEventType.SUITE_STARTED, suite=name))
        collected: list[VerificationReport] = []
        for report in reports:
            collected.append(report)
            self._emit(self._create_event(VerificationEventType.REPORT_CREATED, suite=name, report=report))
            if not report.passed:
                self._emit(self._create_event(VerificationEventType.REPORT_FAILED, suite=name, report=report))
            self._log(
                f"{report.identity_id.value} {report.params} rel={report.rel_residual:.2e}",
                passed=report.passed,
                loglevel=logging.DEBUG if report.passed else logging.WARNING,
            )
        failed = sum(not r.passed for r in collected)
        self._emit(
            self._create_event(
                VerificationEventType.SUITE_COMPLETED,
                suite=name,
                payload={"reports": len(collected), "failed": failed},
            )
        )
        self._log(f"suite {name}: {len(collected)} reports, {failed} failed", passed=failed == 0)
        return collected

    def run(self, suite: Union[Suite, str], config: SuiteConfig) -> list[VerificationReport]:
        """
        Run a registered suite (or every suite for ``Suite.ALL``).

        Returns the reports sorted by identity and parameter record.
        """
        reports: list[VerificationReport] = []
        for name in self._suite_names(suite):
            reports.extend(self.consume(name, registered_suites[name](config)))
        return sort_reports(reports)
