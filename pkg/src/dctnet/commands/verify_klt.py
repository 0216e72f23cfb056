"""Verify-klt command workflow -- Markov KLT versus DCT numeric check."""

from __future__ import annotations

import time

from dctnet.commands import elapsed_ms
from dctnet.errors import DctNetError
from dctnet.output.schema import CommandResult

DEFAULT_THRESHOLD = 0.999


def verify_klt_workflow(
    r: float,
    n: int,
    csv: str | None = None,
    report: str | None = None,
    threshold: float = DEFAULT_THRESHOLD,
) -> CommandResult:
    """Compare the Markov-model KLT with the DCT basis for one ``(r, N)``.

    Succeeds iff the minimum |cos| between matched vectors reaches
    ``threshold``. The report is returned either way.
    """
    from dctnet.fileio import atomic_write_text
    from dctnet.theory.markov import MarkovModel, compare_klt_dct

    start = time.monotonic()
    try:
        klt = compare_klt_dct(MarkovModel(r=r, length=n))
        if csv:
            atomic_write_text(csv, klt.to_csv())
        if report:
            atomic_write_text(report, klt.to_text())
        result = klt.model_dump(mode="json")
        result["threshold"] = threshold
        if klt.min_cos < threshold:
            return CommandResult.error(
                f"min |cos| {klt.min_cos:.6f} is below the threshold {threshold}",
                duration_ms=elapsed_ms(start),
                result=result,
            )
        return CommandResult.ok(result=result, duration_ms=elapsed_ms(start))
    except (DctNetError, OSError) as e:
        return CommandResult.error(str(e), duration_ms=elapsed_ms(start))
