"""Minimal publish/subscribe bus.

Handlers may be plain callables or coroutine functions. ``emit`` only runs
plain handlers; ``emit_async`` runs both, awaiting coroutine results. A
failing handler is logged and never interrupts the emitter.
"""

from __future__ import annotations

import inspect
import logging
from collections import defaultdict
from collections.abc import Awaitable, Callable
from typing import Any

from dctnet.events.types import Event, EventType

logger = logging.getLogger(__name__)

Handler = Callable[[Event], Any] | Callable[[Event], Awaitable[Any]]


class EventBus:
    def __init__(self) -> None:
        self._handlers: dict[EventType, list[Handler]] = defaultdict(list)

    def on(self, event_type: EventType, handler: Handler) -> None:
        """Register ``handler`` for ``event_type``."""
        self._handlers[event_type].append(handler)

    def off(self, event_type: EventType, handler: Handler) -> None:
        if handler in self._handlers.get(event_type, []):
            self._handlers[event_type].remove(handler)

    def emit(self, event_type: EventType, data: dict[str, Any] | None = None) -> Event:
        event = Event(type=event_type, data=data or {})
        for handler in list(self._handlers.get(event_type, [])):
            if inspect.iscoroutinefunction(handler):
                logger.debug("Skipping async handler %r in sync emit", handler)
                continue
            try:
                handler(event)
            except Exception:
                logger.exception("Event handler failed for %s", event_type.value)
        return event

    async def emit_async(self, event_type: EventType, data: dict[str, Any] | None = None) -> Event:
        event = Event(type=event_type, data=data or {})
        for handler in list(self._handlers.get(event_type, [])):
            try:
                result = handler(event)
                if inspect.isawaitable(result):
                    await result
            except Exception:
                logger.exception("Event handler failed for %s", event_type.value)
        return event
