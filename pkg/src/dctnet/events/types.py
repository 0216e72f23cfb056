"""Event types and payload model for lifecycle notifications."""

from __future__ import annotations

from datetime import datetime, timezone
from enum import Enum
from typing import Any

from pydantic import BaseModel, Field


class EventType(str, Enum):
    """Lifecycle events emitted by the library API."""

    PROGRESS_UPDATE = "progress_update"
    BANK_READY = "bank_ready"
    FEATURES_EXTRACTED = "features_extracted"
    EVALUATION_COMPLETE = "evaluation_complete"
    ERROR = "error"


class Event(BaseModel):
    """A single emitted event."""

    type: EventType
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    data: dict[str, Any] = Field(default_factory=dict)
