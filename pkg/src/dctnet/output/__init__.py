"""dctnet output module."""

from dctnet.output.schema import CommandResult, EvalReport, GroupRate, KltReport, KltRow

__all__ = ["CommandResult", "EvalReport", "GroupRate", "KltReport", "KltRow"]
