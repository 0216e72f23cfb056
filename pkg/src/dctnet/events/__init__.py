"""Lifecycle event bus."""

from dctnet.events.bus import EventBus
from dctnet.events.types import Event, EventType

__all__ = ["Event", "EventBus", "EventType"]
