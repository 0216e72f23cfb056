"""Tests for whitening PCA."""

import numpy as np
import pytest

from dctnet.errors import DimensionMismatchError, ParameterError, RankDeficientError
from dctnet.features.types import FeatureStage, FeatureVector
from dctnet.features.wpca import fit_wpca, project_many, project_wpca


def _gallery(rng: np.random.Generator, n: int = 12, dim: int = 30) -> list[FeatureVector]:
    return [FeatureVector(values=v, stage=FeatureStage.TR_NORMALIZED) for v in rng.random((n, dim))]


class TestFitWpca:
    def test_whitened_gallery_has_unit_variance(self, rng: np.random.Generator) -> None:
        gallery = _gallery(rng)
        model = fit_wpca(gallery, 5)
        projected = np.stack([f.values for f in project_many(model, gallery)])
        np.testing.assert_allclose(projected.mean(axis=0), 0.0, atol=1e-9)
        np.testing.assert_allclose(projected.var(axis=0, ddof=1), 1.0, rtol=1e-6)

    def test_components_orthonormal(self, rng: np.random.Generator) -> None:
        model = fit_wpca(_gallery(rng), 6)
        np.testing.assert_allclose(model.components @ model.components.T, np.eye(6), atol=1e-10)
        assert model.dim_in == 30
        assert model.dim_out == 6

    def test_eigenvalues_descending(self, rng: np.random.Generator) -> None:
        model = fit_wpca(_gallery(rng), 8)
        assert np.all(np.diff(model.eigenvalues) <= 0)

    def test_dimension_above_rank(self, rng: np.random.Generator) -> None:
        # 12 centered vectors span at most 11 dimensions
        with pytest.raises(RankDeficientError):
            fit_wpca(_gallery(rng), 12)

    def test_single_vector(self, rng: np.random.Generator) -> None:
        with pytest.raises(ParameterError):
            fit_wpca(_gallery(rng, n=1), 1)

    def test_accepts_matrix(self, rng: np.random.Generator) -> None:
        model = fit_wpca(rng.random((10, 4)), 3, source="matrix")
        assert model.source == "matrix"

    def test_deterministic(self, rng: np.random.Generator) -> None:
        gallery = _gallery(rng)
        np.testing.assert_array_equal(fit_wpca(gallery, 4).components, fit_wpca(gallery, 4).components)


class TestProjectWpca:
    def test_stage_and_length(self, rng: np.random.Generator) -> None:
        gallery = _gallery(rng)
        out = project_wpca(fit_wpca(gallery, 4), gallery[0])
        assert out.stage is FeatureStage.WPCA
        assert out.dim == 4

    def test_length_mismatch(self, rng: np.random.Generator) -> None:
        model = fit_wpca(_gallery(rng), 4)
        with pytest.raises(DimensionMismatchError):
            project_wpca(model, np.zeros(29))
