"""Write events to stderr as ``event: {json}`` lines."""

from __future__ import annotations

import sys

from dctnet.events.types import Event


def cli_json_handler(event: Event) -> None:
    sys.stderr.write(f"event: {event.model_dump_json()}\n")
    sys.stderr.flush()
