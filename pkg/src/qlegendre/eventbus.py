"""
Synchronous event dispatch for verification runs.

Subscriptions are kept per event type, each list ordered by descending
priority, so an emitted event only visits the handlers registered for it.
"""

from __future__ import annotations

from collections import defaultdict
from typing import TYPE_CHECKING, Any, Callable, Optional
import itertools
import logging

from pydantic import BaseModel, ConfigDict

from .protocol import EventHandler
from .enums import VerificationEventType

if TYPE_CHECKING:  # pragma: no cover
    from .runner import VerificationRunner
    from .events import VerificationEvent

__all__ = ["EventBus", "Subscription"]

log = logging.getLogger("qlegendre.events")

EventMask = Callable[[Any], bool]


class Subscription(BaseModel):
    """A handler registered for one event type."""

    token: str
    event_type: VerificationEventType
    handler: EventHandler
    priority: int = 0
    once: bool = False
    mask: Optional[EventMask] = None

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        arbitrary_types_allowed=True,
    )

    def accepts(self, event: "VerificationEvent") -> bool:
        return self.mask is None or bool(self.mask(event))


class EventBus:
    """
    Dispatches verification events to their subscribed handlers.

    Parameters
    ----------
    strict : bool
        If True, exceptions in event handlers propagate. Otherwise they are
        logged on ``qlegendre.events`` and the remaining handlers still run.
    """

    def __init__(self, *, strict: bool = False):
        self._strict = strict
        self._by_type: defaultdict[VerificationEventType, list[Subscription]] = defaultdict(list)
        self._type_of: dict[str, VerificationEventType] = {}
        self._tokens = itertools.count(1)

    def __len__(self) -> int:
        return len(self._type_of)

    def __contains__(self, token: object) -> bool:
        return token in self._type_of

    def subscriptions(self, event_type: VerificationEventType) -> tuple[Subscription, ...]:
        """Subscriptions for ``event_type`` in dispatch order."""
        return tuple(self._by_type.get(event_type, ()))

    def subscribe(
        self,
        event_type: VerificationEventType,
        handler: EventHandler,
        *,
        priority: int = 0,
        once: bool = False,
        mask: Optional[EventMask] = None,
    ) -> str:
        """
        Subscribe a handler to an event type.

        Parameters
        ----------
        event_type : VerificationEventType
            The type of event to subscribe to.
        handler : EventHandler
            Called as ``handler(event, runner)``.
        priority : int
            Higher priority handlers are called first; equal priorities keep
            registration order.
        once : bool
            If True, the handler is removed after its first call.
        mask : Optional[Callable[[VerificationEvent], bool]]
            The handler is skipped for events on which the mask is False.

        Returns
        -------
        str
            Token for :meth:`unsubscribe`.
        """
        token = f"{event_type.name.lower()}-{next(self._tokens)}"
        sub = Subscription(
            token=token,
            event_type=event_type,
            handler=handler,
            priority=priority,
            once=once,
            mask=mask,
        )
        subs = self._by_type[event_type]
        position = next((i for i, s in enumerate(subs) if s.priority < priority), len(subs))
        subs.insert(position, sub)
        self._type_of[token] = event_type
        return token

    def unsubscribe(self, token: str) -> None:
        """Remove a subscription; unknown tokens are ignored."""
        event_type = self._type_of.pop(token, None)
        if event_type is None:
            return
        self._by_type[event_type] = [s for s in self._by_type[event_type] if s.token != token]

    def clear(self, event_type: Optional[VerificationEventType] = None) -> None:
        """Drop every subscription, or only those for ``event_type``."""
        types = [event_type] if event_type is not None else list(self._by_type)
        for t in types:
            for sub in self._by_type.pop(t, []):
                self._type_of.pop(sub.token, None)

    def emit(self, event: "VerificationEvent", runner: Optional["VerificationRunner"]) -> None:
        """Call every handler subscribed to ``event.type`` whose mask accepts it."""
        # handlers may subscribe or unsubscribe while we iterate
        for sub in self.subscriptions(event.type):
            if sub.token not in self._type_of or not sub.accepts(event):
                continue
            if sub.once:
                self.unsubscribe(sub.token)
            try:
                sub.handler(event, runner)
            except Exception:
                if self._strict:
                    raise
                log.exception("handler %s failed on %s", sub.token, event.type.name)
