"""Tests for cosine distance and nearest-neighbour identification."""

import numpy as np
import pytest

from dctnet.errors import DimensionMismatchError, ParameterError, ZeroVectorError
from dctnet.features.types import FeatureStage, FeatureVector
from dctnet.matching.matcher import GallerySet, cosine_distance, identify


def _fv(values: list[float], stage: FeatureStage = FeatureStage.TR_NORMALIZED) -> FeatureVector:
    return FeatureVector(values=np.array(values, dtype=np.float64), stage=stage)


class TestCosineDistance:
    def test_identical_is_zero(self) -> None:
        assert cosine_distance(_fv([1, 2, 3]), _fv([1, 2, 3])) == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal_is_one(self) -> None:
        assert cosine_distance(_fv([1, 0]), _fv([0, 5])) == pytest.approx(1.0)

    def test_opposite_is_two(self) -> None:
        assert cosine_distance(_fv([1, 1]), _fv([-2, -2])) == pytest.approx(2.0)

    def test_scale_invariant(self) -> None:
        a, b = np.array([1.0, 3.0, 2.0]), np.array([2.0, 1.0, 0.5])
        assert cosine_distance(a, b) == pytest.approx(cosine_distance(10 * a, b))

    def test_one_zero_vector(self) -> None:
        assert cosine_distance(_fv([0, 0]), _fv([1, 0])) == 1.0

    def test_both_zero(self) -> None:
        with pytest.raises(ZeroVectorError):
            cosine_distance(_fv([0, 0]), _fv([0, 0]))

    def test_length_mismatch(self) -> None:
        with pytest.raises(DimensionMismatchError):
            cosine_distance(_fv([1, 0]), _fv([1, 0, 0]))


class TestGallerySet:
    def test_from_entries(self) -> None:
        gallery = GallerySet.from_entries([(4, _fv([1, 0])), (7, _fv([0, 1]))])
        assert gallery.size == 2
        assert gallery.dim == 2
        assert gallery.stage is FeatureStage.TR_NORMALIZED

    def test_empty(self) -> None:
        with pytest.raises(ParameterError):
            GallerySet.from_entries([])

    def test_mixed_stages(self) -> None:
        with pytest.raises(ParameterError):
            GallerySet.from_entries([(1, _fv([1, 0])), (2, _fv([0, 1], FeatureStage.RAW_HIST))])

    def test_mixed_lengths(self) -> None:
        with pytest.raises(DimensionMismatchError):
            GallerySet.from_entries([(1, _fv([1, 0])), (2, _fv([0, 1, 0]))])

    def test_distances_match_pairwise(self, rng: np.random.Generator) -> None:
        vectors = rng.random((5, 8))
        gallery = GallerySet.from_entries([(i, _fv(list(v))) for i, v in enumerate(vectors)])
        probe = rng.random(8)
        expected = [cosine_distance(probe, v) for v in vectors]
        np.testing.assert_allclose(gallery.distances(probe), expected, atol=1e-12)


class TestIdentify:
    def test_nearest_subject(self) -> None:
        gallery = GallerySet.from_entries([(10, _fv([1, 0, 0])), (20, _fv([0, 1, 0])), (30, _fv([0, 0, 1]))])
        subject, distance = identify(_fv([0.1, 0.9, 0.0]), gallery)
        assert subject == 20
        assert distance < 0.1

    def test_tie_goes_to_first_entry(self) -> None:
        gallery = GallerySet.from_entries([(8, _fv([1, 0])), (3, _fv([2, 0]))])
        assert identify(_fv([5, 0]), gallery)[0] == 8

    def test_rescaled_entry_changes_nothing(self, rng: np.random.Generator) -> None:
        vectors = rng.random((6, 10))
        probe = rng.random(10)
        base = identify(probe, GallerySet.from_entries([(i, _fv(list(v))) for i, v in enumerate(vectors)]))
        for i in range(len(vectors)):
            for scale in (1e-3, 0.5, 40.0):
                scaled = vectors.copy()
                scaled[i] *= scale
                result = identify(probe, GallerySet.from_entries([(j, _fv(list(v))) for j, v in enumerate(scaled)]))
                assert result[0] == base[0]
                assert result[1] == pytest.approx(base[1], abs=1e-12)

    def test_agrees_with_brute_force(self, rng: np.random.Generator) -> None:
        for _ in range(200):
            vectors = rng.standard_normal((5, 6))
            probe = rng.standard_normal(6)
            gallery = GallerySet.from_entries([(10 * i, _fv(list(v))) for i, v in enumerate(vectors)])
            brute = [1.0 - float(v @ probe) / (np.linalg.norm(v) * np.linalg.norm(probe)) for v in vectors]
            best = int(np.argmin(brute))
            subject, distance = identify(probe, gallery)
            assert subject == 10 * best
            assert distance == pytest.approx(brute[best], abs=1e-12)

    def test_zero_query(self) -> None:
        gallery = GallerySet.from_entries([(1, _fv([1, 0]))])
        with pytest.raises(ZeroVectorError):
            identify(_fv([0, 0]), gallery)

    def test_query_length(self) -> None:
        gallery = GallerySet.from_entries([(1, _fv([1, 0]))])
        with pytest.raises(DimensionMismatchError):
            identify(_fv([1, 0, 0]), gallery)
