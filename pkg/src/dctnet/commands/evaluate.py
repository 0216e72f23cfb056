"""Evaluate command workflow -- rank-1 identification report for a protocol."""

from __future__ import annotations

import time
from pathlib import Path

from dctnet.commands import elapsed_ms
from dctnet.errors import DctNetError
from dctnet.features.extractor import ProgressCallback
from dctnet.output.schema import CommandResult


async def evaluate_workflow(
    manifest: str,
    config: str | None,
    report: str | None = None,
    tr_norm: bool | None = None,
    wpca_dim: int | None = None,
    workers: int | None = None,
    on_progress: ProgressCallback | None = None,
) -> CommandResult:
    """Run the protocol and write ``report`` (CSV) plus a JSON twin beside it.

    Args:
        manifest: Gallery/probe manifest CSV.
        config: Protocol TOML; defaults when omitted.
        report: CSV output path.
        tr_norm: Override ``histogram.tr_norm``.
        wpca_dim: Override ``wpca.dim``; 0 disables WPCA.
        workers: Extraction threads.

    Returns:
        The report in ``result``; ``success`` is false if any probe failed.
    """
    from dctnet.data.config import PipelineConfig
    from dctnet.data.manifest import DatasetManifest
    from dctnet.fileio import atomic_write_text
    from dctnet.matching.evaluate import evaluate

    start = time.monotonic()
    try:
        cfg = PipelineConfig.load(config) if config else PipelineConfig()
        cfg = cfg.with_overrides(tr_norm=tr_norm, wpca_dim=wpca_dim)
        data = DatasetManifest.load(manifest)
        outcome = await evaluate(data, cfg, workers=workers, on_progress=on_progress)

        result = outcome.model_dump(mode="json")
        if report:
            csv_path = Path(report)
            json_path = csv_path.with_suffix(".json")
            atomic_write_text(csv_path, outcome.to_csv())
            atomic_write_text(json_path, outcome.model_dump_json(indent=2) + "\n")
            result["report_files"] = [str(csv_path), str(json_path)]

        if outcome.failures:
            return CommandResult(
                success=False,
                result=result,
                errors=[f"Extraction failed for {len(outcome.failures)} probe(s)", *outcome.failures],
                duration_ms=elapsed_ms(start),
            )
        return CommandResult.ok(result=result, duration_ms=elapsed_ms(start))
    except (DctNetError, OSError) as e:
        return CommandResult.error(str(e), duration_ms=elapsed_ms(start))
