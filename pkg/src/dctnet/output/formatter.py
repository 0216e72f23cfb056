"""Human-readable rendering of a CommandResult (``--output-format text``)."""

from __future__ import annotations

from typing import Any

from dctnet.output.schema import CommandResult


def _format_value(value: Any, indent: int) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines: list[str] = []
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_format_value(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {item}")
        return lines
    if isinstance(value, list):
        if len(value) > 12:
            shown = [f"{pad}- {v}" for v in value[:12]]
            shown.append(f"{pad}... ({len(value) - 12} more)")
            return shown
        return [f"{pad}- {v}" for v in value]
    return [f"{pad}{value}"]


def format_text(result: CommandResult) -> str:
    """Render a CommandResult as indented plain text."""
    lines = [f"Status: {'SUCCESS' if result.success else 'FAILURE'}"]
    lines.append(f"Duration: {result.duration_ms / 1000:.2f}s")
    if result.errors:
        lines.append("Errors:")
        lines.extend(f"  - {e}" for e in result.errors)
    if result.result is not None:
        lines.append("Result:")
        lines.extend(_format_value(result.result, 1))
    return "\n".join(lines)
