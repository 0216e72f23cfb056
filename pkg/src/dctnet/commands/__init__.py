"""One workflow per CLI subcommand.

Every workflow returns a :class:`~dctnet.output.schema.CommandResult` and
never raises for expected failures. Image-heavy workflows are async.
"""

import time


def elapsed_ms(start: float) -> int:
    """Milliseconds since ``start`` (a ``time.monotonic()`` reading)."""
    return int((time.monotonic() - start) * 1000)


__all__ = ["elapsed_ms"]
