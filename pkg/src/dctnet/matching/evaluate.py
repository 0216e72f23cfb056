"""Closed-set rank-1 identification over a gallery/probe manifest."""

from __future__ import annotations

import logging
from collections.abc import Sequence

from dctnet.data.config import PipelineConfig
from dctnet.data.manifest import DatasetManifest
from dctnet.errors import DctNetError, ImageLoadError, ParameterError
from dctnet.features.extractor import ExtractionOutcome, ProgressCallback, pipeline_for_manifest
from dctnet.features.types import FeatureVector
from dctnet.features.wpca import WpcaModel, fit_wpca, project_wpca
from dctnet.matching.matcher import GallerySet, identify
from dctnet.output.schema import EvalReport, GroupRate

logger = logging.getLogger(__name__)


def score_identification(
    predicted: Sequence[int],
    truth: Sequence[int],
    groups: Sequence[str],
    group_order: Sequence[str],
) -> list[GroupRate]:
    """Per-group rank-1 counts, in ``group_order``."""
    if not len(predicted) == len(truth) == len(groups):
        raise ParameterError("Predictions, labels and groups must align", name="predicted")
    rates = []
    for group in group_order:
        hits = [p == t for p, t, g in zip(predicted, truth, groups) if g == group]
        rates.append(GroupRate(group=group, n_probes=len(hits), n_correct=sum(hits)))
    return rates


def _raise_gallery_failures(outcomes: list[ExtractionOutcome]) -> None:
    failed = [o for o in outcomes if not o.ok]
    if failed:
        raise ImageLoadError(
            f"Gallery extraction failed for {len(failed)} image(s); run aborted",
            path=failed[0].source,
            reason=failed[0].error,
        )


def fit_gallery_wpca(features: list[FeatureVector], config: PipelineConfig) -> WpcaModel | None:
    if config.wpca.dim is None:
        return None
    return fit_wpca(features, config.wpca.dim, source="gallery")


async def evaluate(
    manifest: DatasetManifest,
    config: PipelineConfig,
    *,
    workers: int | None = None,
    on_progress: ProgressCallback | None = None,
) -> EvalReport:
    """Extract, optionally whiten, match and score every probe.

    Probe failures are listed in ``report.failures`` and excluded from the
    group counts.

    Raises:
        ParameterError: If the manifest has no probes.
        ImageLoadError: If any gallery image fails to produce a descriptor.
        DctNetError: For model errors such as a WPCA dimension above the
            gallery rank.
    """
    if not manifest.probes:
        raise ParameterError("Manifest has no probe rows to evaluate", name="manifest")
    workers = workers or config.run.workers
    gallery_rows = manifest.gallery
    probe_rows = manifest.probes

    pipeline, images = await pipeline_for_manifest(manifest, config, workers=workers)
    gallery_sources = images or [manifest.resolve(r) for r in gallery_rows]
    gallery_out = await pipeline.extract_many(gallery_sources, workers=workers, on_progress=on_progress)
    _raise_gallery_failures(gallery_out)
    probe_out = await pipeline.extract_many(
        [manifest.resolve(r) for r in probe_rows], workers=workers, on_progress=on_progress
    )

    gallery_features = [o.feature for o in gallery_out if o.feature is not None]
    model = fit_gallery_wpca(gallery_features, config)
    if model is not None:
        gallery_features = [project_wpca(model, f) for f in gallery_features]
    gallery = GallerySet.from_entries(
        [(r.subject, f) for r, f in zip(gallery_rows, gallery_features)],
        wpca=model,
    )

    predicted, truth, groups, failures = [], [], [], []
    for row, outcome in zip(probe_rows, probe_out):
        if outcome.feature is None:
            failures.append(f"{row.path}: {outcome.error}")
            continue
        feature = outcome.feature if model is None else project_wpca(model, outcome.feature)
        try:
            subject, _ = identify(feature, gallery)
        except DctNetError as exc:
            failures.append(f"{row.path}: {exc}")
            continue
        predicted.append(subject)
        truth.append(row.subject)
        groups.append(row.group)

    report = EvalReport(
        groups=score_identification(predicted, truth, groups, manifest.probe_groups),
        n_gallery=gallery.size,
        failures=failures,
        config=config.model_dump(mode="json"),
    )
    logger.debug("Evaluated %d probes against %d gallery entries", len(predicted), gallery.size)
    return report
