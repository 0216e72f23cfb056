"""Extract command workflow -- descriptors for every manifest image."""

from __future__ import annotations

import time

from dctnet.commands import elapsed_ms
from dctnet.data.config import PipelineConfig
from dctnet.data.manifest import DatasetManifest
from dctnet.errors import DctNetError
from dctnet.features.extractor import ProgressCallback
from dctnet.features.store import FeatureStore
from dctnet.output.schema import CommandResult


async def extract_manifest(
    manifest: DatasetManifest,
    config: PipelineConfig,
    *,
    workers: int | None = None,
    on_progress: ProgressCallback | None = None,
) -> tuple[FeatureStore | None, list[str]]:
    """Descriptors for all rows in manifest order.

    With ``wpca.dim`` set, the projection is fitted on the gallery rows and
    applied to every row. Returns ``(None, failures)`` if any image fails.
    """
    import numpy as np

    from dctnet.features.extractor import pipeline_for_manifest
    from dctnet.features.wpca import fit_wpca, project_wpca

    workers = workers or config.run.workers
    pipeline, _ = await pipeline_for_manifest(manifest, config, workers=workers)
    outcomes = await pipeline.extract_many(
        [manifest.resolve(r) for r in manifest.rows], workers=workers, on_progress=on_progress
    )
    failures = [f"{row.path}: {o.error}" for row, o in zip(manifest.rows, outcomes) if not o.ok]
    if failures:
        return None, failures

    features = [o.feature for o in outcomes if o.feature is not None]
    if config.wpca.dim is not None:
        gallery = [f for row, f in zip(manifest.rows, features) if row.role == "gallery"]
        model = fit_wpca(gallery, config.wpca.dim)
        features = [project_wpca(model, f) for f in features]

    labels = manifest.group_labels
    store = FeatureStore(
        stage=features[0].stage,
        subjects=np.array([r.subject for r in manifest.rows]),
        groups=np.array([labels.index(r.group) for r in manifest.rows]),
        values=np.stack([f.values for f in features]),
        group_labels=labels,
        paths=[r.path for r in manifest.rows],
    )
    return store, []


async def extract_workflow(
    manifest: str,
    config: str | None,
    out: str,
    workers: int | None = None,
    on_progress: ProgressCallback | None = None,
) -> CommandResult:
    """Extract a feature store for every image in ``manifest``.

    Nothing is written when any image fails.
    """
    from dctnet.features.store import write_feature_store

    start = time.monotonic()
    try:
        cfg = PipelineConfig.load(config) if config else PipelineConfig()
        data = DatasetManifest.load(manifest)
        store, failures = await extract_manifest(data, cfg, workers=workers, on_progress=on_progress)
        if store is None:
            return CommandResult(
                success=False,
                result={"failures": failures},
                errors=[f"Extraction failed for {len(failures)} image(s)", *failures],
                duration_ms=elapsed_ms(start),
            )
        path = write_feature_store(out, store)
        result = {"store": str(path), "count": store.count, "dim": store.dim, "stage": store.stage.value}
        return CommandResult.ok(result=result, duration_ms=elapsed_ms(start))
    except (DctNetError, OSError) as e:
        return CommandResult.error(str(e), duration_ms=elapsed_ms(start))
