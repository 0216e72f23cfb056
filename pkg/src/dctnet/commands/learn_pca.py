"""Learn-pca command workflow -- PCANet-style banks learned from a gallery."""

from __future__ import annotations

import time
from pathlib import Path

from dctnet.commands import elapsed_ms
from dctnet.errors import DctNetError
from dctnet.output.schema import CommandResult


async def learn_pca_workflow(
    manifest: str,
    out: str,
    config: str | None = None,
    k: int | None = None,
    per_layer: list[int] | None = None,
    workers: int | None = None,
    emit_pgm: str | None = None,
    upscale: int = 1,
) -> CommandResult:
    """Learn one PCA bank per layer from the manifest's gallery images.

    Filter size, per-layer counts and the crop size come from ``config``
    (or the defaults), with ``k`` and ``per_layer`` as overrides. With
    ``emit_pgm`` the learned filters are rendered like DCT banks.
    """
    import anyio

    from dctnet.commands.filters import describe_bank
    from dctnet.data.config import PipelineConfig
    from dctnet.data.manifest import DatasetManifest
    from dctnet.features.extractor import load_many
    from dctnet.filters.bankfile import write_banks
    from dctnet.filters.pca import learn_layered_pca
    from dctnet.filters.render import emit_filter_pgms

    start = time.monotonic()
    try:
        cfg = PipelineConfig.load(config) if config else PipelineConfig()
        size = k or cfg.filters.k
        counts = per_layer or cfg.filters.per_layer
        data = DatasetManifest.load(manifest)
        paths = [data.resolve(r) for r in data.gallery]
        images = await load_many(paths, cfg.image_size, workers=workers or cfg.run.workers)
        banks = await anyio.to_thread.run_sync(
            lambda: learn_layered_pca(images, len(counts), size, counts),
        )
        result = {
            "bank_file": str(write_banks(out, banks)),
            "n_images": len(images),
            "layers": [describe_bank(i, b) for i, b in enumerate(banks, start=1)],
        }
        if emit_pgm:
            result["pgm_files"] = [str(p) for p in emit_filter_pgms(banks, Path(emit_pgm), upscale)]
        return CommandResult.ok(result=result, duration_ms=elapsed_ms(start))
    except (DctNetError, ValueError, OSError) as e:
        return CommandResult.error(str(e), duration_ms=elapsed_ms(start))
