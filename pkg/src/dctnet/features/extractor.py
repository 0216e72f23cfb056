"""End-to-end descriptor extraction and concurrent batch processing."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path

import anyio
import numpy as np

from dctnet.data.config import PipelineConfig
from dctnet.data.images import load_image_grayscale
from dctnet.data.manifest import DatasetManifest
from dctnet.errors import DctNetError, ParameterError
from dctnet.features.tr_norm import raw_feature, tr_normalize
from dctnet.features.types import FeatureVector
from dctnet.filters.bankfile import read_banks
from dctnet.filters.dct import build_dct_banks
from dctnet.filters.pca import learn_layered_pca
from dctnet.filters.types import FilterBank
from dctnet.network.cascade import forward_cascade
from dctnet.network.encoding import binarize_encode, block_histograms

logger = logging.getLogger(__name__)

ImageSource = str | Path | np.ndarray
ProgressCallback = Callable[[int, int], None]


def build_banks(config: PipelineConfig, gallery_images: Sequence[np.ndarray] | None = None) -> list[FilterBank]:
    """Filter banks for ``config.filters.source``.

    ``pca-learn`` needs the gallery images to learn from.
    """
    section = config.filters
    if section.source == "dct":
        return build_dct_banks(section.k, section.per_layer, section.order, flip_axis=section.flip_axis)
    if section.source == "bank":
        return read_banks(section.bank)
    if not gallery_images:
        raise ParameterError("PCA-learned filters need gallery images", name="gallery")
    return learn_layered_pca(list(gallery_images), section.layers, section.k, section.per_layer)


@dataclass(frozen=True)
class ExtractionOutcome:
    """One batch item: a descriptor or the error that prevented it."""

    index: int
    source: str
    feature: FeatureVector | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.feature is not None


class FeaturePipeline:
    """Cascade, encode, histogram and (optionally) TR-normalize one image at a time.

    Instances are immutable and safe to share between worker threads.
    """

    def __init__(
        self,
        banks: list[FilterBank],
        *,
        block: tuple[int, int] = (16, 16),
        tr_norm: bool = True,
        image_size: tuple[int, int] | None = None,
    ) -> None:
        if not banks:
            raise ParameterError("At least one filter bank is required", name="banks")
        self.banks = list(banks)
        self.block = (int(block[0]), int(block[1]))
        self.tr_norm = tr_norm
        self.image_size = image_size

    @classmethod
    def from_config(
        cls,
        config: PipelineConfig,
        gallery_images: Sequence[np.ndarray] | None = None,
    ) -> FeaturePipeline:
        return cls(
            build_banks(config, gallery_images),
            block=config.histogram.block,
            tr_norm=config.histogram.tr_norm,
            image_size=config.image_size,
        )

    @property
    def output_dim(self) -> int:
        """``2**P_L * B * D`` for the configured image size."""
        if self.image_size is None:
            raise ParameterError("Output length depends on the image size, which is not fixed", name="image_size")
        rows, cols = self.image_size
        blocks = -(-rows // self.block[0]) * -(-cols // self.block[1])
        channels = int(np.prod([b.count for b in self.banks[:-1]], dtype=np.int64))
        return (1 << self.banks[-1].count) * blocks * channels

    def extract(self, image: np.ndarray) -> FeatureVector:
        stack = forward_cascade(image, self.banks)
        codes = [binarize_encode(maps) for maps in stack.maps]
        hists = block_histograms(codes, self.block)
        return tr_normalize(hists) if self.tr_norm else raw_feature(hists)

    def load(self, source: ImageSource) -> np.ndarray:
        if isinstance(source, np.ndarray):
            return source
        return load_image_grayscale(source, self.image_size)

    def extract_source(self, source: ImageSource) -> FeatureVector:
        return self.extract(self.load(source))

    async def extract_many(
        self,
        sources: Sequence[ImageSource],
        *,
        workers: int = 4,
        on_progress: ProgressCallback | None = None,
    ) -> list[ExtractionOutcome]:
        """Extract descriptors in worker threads; outcomes keep input order.

        Per-item failures (unreadable images, bad sizes) are captured on the
        outcome instead of cancelling the batch.
        """
        limiter = anyio.CapacityLimiter(max(1, workers))
        outcomes: list[ExtractionOutcome | None] = [None] * len(sources)
        done = 0

        async def run(index: int, source: ImageSource) -> None:
            nonlocal done
            label = "<array>" if isinstance(source, np.ndarray) else str(source)
            try:
                feature = await anyio.to_thread.run_sync(self.extract_source, source, limiter=limiter)
                outcomes[index] = ExtractionOutcome(index=index, source=label, feature=feature)
            except (DctNetError, OSError) as exc:
                logger.debug("Extraction failed for %s: %s", label, exc)
                outcomes[index] = ExtractionOutcome(index=index, source=label, error=str(exc))
            done += 1
            if on_progress is not None:
                on_progress(done, len(sources))

        async with anyio.create_task_group() as tg:
            for index, source in enumerate(sources):
                tg.start_soon(run, index, source)
        return [o for o in outcomes if o is not None]


async def load_many(
    paths: Sequence[str | Path],
    size: tuple[int, int] | None,
    *,
    workers: int = 4,
) -> list[np.ndarray]:
    """Load images concurrently, in input order.

    Raises:
        DctNetError: The failure of the earliest failing path, after all
            loads have finished.
    """
    limiter = anyio.CapacityLimiter(max(1, workers))
    images: list[np.ndarray | None] = [None] * len(paths)
    errors: dict[int, DctNetError] = {}

    async def run(index: int, path: str | Path) -> None:
        try:
            images[index] = await anyio.to_thread.run_sync(load_image_grayscale, path, size, limiter=limiter)
        except DctNetError as exc:
            errors[index] = exc

    async with anyio.create_task_group() as tg:
        for index, path in enumerate(paths):
            tg.start_soon(run, index, path)
    if errors:
        raise errors[min(errors)]
    return [img for img in images if img is not None]


async def pipeline_for_manifest(
    manifest: DatasetManifest,
    config: PipelineConfig,
    *,
    workers: int,
) -> tuple[FeaturePipeline, list[np.ndarray]]:
    """Pipeline for ``config``; PCA learning loads (and returns) the gallery images first."""
    if config.filters.source != "pca-learn":
        return await anyio.to_thread.run_sync(FeaturePipeline.from_config, config), []
    paths = [manifest.resolve(r) for r in manifest.gallery]
    images = await load_many(paths, config.image_size, workers=workers)
    pipeline = await anyio.to_thread.run_sync(FeaturePipeline.from_config, config, images)
    return pipeline, images
