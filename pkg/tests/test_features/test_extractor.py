"""Tests for the feature pipeline and concurrent extraction."""

from pathlib import Path

import numpy as np
import pytest
from PIL import Image

from dctnet.data.config import PipelineConfig
from dctnet.data.images import write_pgm
from dctnet.data.manifest import DatasetManifest
from dctnet.errors import ImageLoadError, ParameterError
from dctnet.features.extractor import (
    FeaturePipeline,
    build_banks,
    load_many,
    pipeline_for_manifest,
)
from dctnet.features.types import FeatureStage
from dctnet.filters.bankfile import write_banks
from dctnet.filters.dct import build_dct_banks
from dctnet.filters.types import ScanPolicy


# ── Bank sources ─────────────────────────────────────────────────


class TestBuildBanks:
    def test_dct_default(self) -> None:
        banks = build_banks(PipelineConfig())
        assert [b.count for b in banks] == [8, 8]
        assert banks[0].policy is ScanPolicy.HORIZONTAL_MAJOR

    def test_bank_file(self, tmp_path: Path) -> None:
        path = write_banks(tmp_path / "b.dctb", build_dct_banks(3, [4]))
        config = PipelineConfig.from_dict({"filters": {"source": "bank", "bank": str(path)}})
        banks = build_banks(config)
        assert banks[0].k == 3

    def test_pca_learn_needs_images(self) -> None:
        config = PipelineConfig.from_dict({"filters": {"source": "pca-learn"}})
        with pytest.raises(ParameterError):
            build_banks(config)

    def test_pca_learn_from_images(self, rng: np.random.Generator) -> None:
        config = PipelineConfig.from_dict({"filters": {"source": "pca-learn", "k": 3, "per_layer": [4, 2]}})
        banks = build_banks(config, [rng.random((16, 16)) for _ in range(2)])
        assert [b.policy for b in banks] == [ScanPolicy.LEARNED, ScanPolicy.LEARNED]


# ── Single image ─────────────────────────────────────────────────


class TestFeaturePipeline:
    def test_output_length(self, rng: np.random.Generator) -> None:
        pipeline = FeaturePipeline(build_dct_banks(5, [8, 8]), block=(16, 16), image_size=(64, 64))
        feature = pipeline.extract(rng.uniform(0, 255, size=(64, 64)))
        assert feature.dim == 256 * 16 * 8
        assert pipeline.output_dim == feature.dim
        assert feature.stage is FeatureStage.TR_NORMALIZED

    def test_raw_histograms(self, rng: np.random.Generator) -> None:
        pipeline = FeaturePipeline(build_dct_banks(3, [2, 3]), block=(4, 4), tr_norm=False)
        feature = pipeline.extract(rng.random((8, 8)))
        assert feature.stage is FeatureStage.RAW_HIST
        # every block of every channel counts all 16 of its pixels
        assert feature.values.sum() == 2 * 4 * 16

    def test_deterministic(self, rng: np.random.Generator) -> None:
        image = rng.uniform(0, 255, size=(32, 32))
        pipeline = FeaturePipeline(build_dct_banks(5, [4, 4]), block=(8, 8))
        np.testing.assert_array_equal(pipeline.extract(image).values, pipeline.extract(image).values)

    def test_output_dim_needs_size(self) -> None:
        with pytest.raises(ParameterError):
            _ = FeaturePipeline(build_dct_banks(3, [2])).output_dim

    def test_no_banks(self) -> None:
        with pytest.raises(ParameterError):
            FeaturePipeline([])


# ── Batches ──────────────────────────────────────────────────────


class TestExtractMany:
    @pytest.mark.anyio
    async def test_keeps_input_order(self, rng: np.random.Generator) -> None:
        pipeline = FeaturePipeline(build_dct_banks(3, [2, 2]), block=(4, 4))
        images = [rng.random((8, 8)) for _ in range(6)]
        outcomes = await pipeline.extract_many(images, workers=3)
        assert [o.index for o in outcomes] == list(range(6))
        for image, outcome in zip(images, outcomes):
            np.testing.assert_array_equal(outcome.feature.values, pipeline.extract(image).values)

    @pytest.mark.anyio
    async def test_failures_are_captured(self, tmp_path: Path, rng: np.random.Generator) -> None:
        pipeline = FeaturePipeline(build_dct_banks(3, [2]), block=(4, 4), image_size=(8, 8))
        outcomes = await pipeline.extract_many([rng.random((8, 8)), tmp_path / "missing.pgm"])
        assert outcomes[0].ok
        assert not outcomes[1].ok
        assert "missing.pgm" in outcomes[1].error

    @pytest.mark.anyio
    async def test_oversized_image_fails_its_item_only(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        huge = write_pgm(tmp_path / "huge.pgm", np.zeros((40, 40), dtype=np.uint8))
        small = write_pgm(tmp_path / "small.pgm", np.zeros((8, 8), dtype=np.uint8))
        monkeypatch.setattr(Image, "MAX_IMAGE_PIXELS", 500)
        pipeline = FeaturePipeline(build_dct_banks(3, [2]), block=(4, 4), image_size=(8, 8))
        outcomes = await pipeline.extract_many([small, huge, small])
        assert [o.ok for o in outcomes] == [True, False, True]
        assert "huge.pgm" in outcomes[1].error

    @pytest.mark.anyio
    async def test_progress_reported(self, rng: np.random.Generator) -> None:
        pipeline = FeaturePipeline(build_dct_banks(3, [2]), block=(4, 4))
        seen: list[tuple[int, int]] = []
        await pipeline.extract_many([rng.random((8, 8)) for _ in range(3)], on_progress=lambda d, t: seen.append((d, t)))
        assert sorted(seen) == [(1, 3), (2, 3), (3, 3)]


class TestLoadMany:
    @pytest.mark.anyio
    async def test_earliest_error_raised(self, tmp_path: Path) -> None:
        with pytest.raises(ImageLoadError) as exc_info:
            await load_many([tmp_path / "a.pgm", tmp_path / "b.pgm"], None)
        assert "a.pgm" in str(exc_info.value)


class TestPipelineForManifest:
    @pytest.mark.anyio
    async def test_dct_skips_loading(self, tiny_dataset: Path) -> None:
        manifest = DatasetManifest.load(tiny_dataset)
        pipeline, images = await pipeline_for_manifest(manifest, PipelineConfig(), workers=2)
        assert images == []
        assert pipeline.banks[0].policy is ScanPolicy.HORIZONTAL_MAJOR

    @pytest.mark.anyio
    async def test_pca_learn_returns_gallery(self, tiny_dataset: Path) -> None:
        manifest = DatasetManifest.load(tiny_dataset)
        config = PipelineConfig.from_dict(
            {"image": {"height": 32, "width": 32}, "filters": {"source": "pca-learn", "per_layer": [4, 4]}}
        )
        pipeline, images = await pipeline_for_manifest(manifest, config, workers=2)
        assert len(images) == 3
        assert pipeline.banks[0].policy is ScanPolicy.LEARNED
