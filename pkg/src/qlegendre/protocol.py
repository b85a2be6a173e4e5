"""
Protocols for event handlers and verification suites.

Suites are plain callables; anything matching :class:`SuiteLike` can be put
in the suite registry and run by a :class:`~qlegendre.runner.VerificationRunner`.
"""

from typing import TYPE_CHECKING, Iterable, Protocol, runtime_checkable

if TYPE_CHECKING:  # pragma: no cover
    from .events import VerificationEvent
    from .report import VerificationReport
    from .runner import VerificationRunner
    from .suites import SuiteConfig

__all__ = ["EventHandler", "SuiteLike"]


@runtime_checkable
class EventHandler(Protocol):
    """A protocol defining the signature for event handler callables."""

    def __call__(
        self, event: "VerificationEvent", runner: "VerificationRunner"
    ) -> None: ...  # pragma: no cover


@runtime_checkable
class SuiteLike(Protocol):
    """
    A verification suite.

    Called with the run configuration, it yields one report per checked
    relation and parameter record. Parameter draws must depend on
    ``config.seed`` only.
    """

    def __call__(
        self, config: "SuiteConfig"
    ) -> Iterable["VerificationReport"]: ...  # pragma: no cover
