"""Whitening PCA learned on gallery descriptors."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import linalg

from dctnet.errors import DimensionMismatchError, ParameterError, RankDeficientError
from dctnet.features.types import FeatureStage, FeatureVector
from dctnet.linalg import fix_sign, numeric_rank

WHITENING_FLOOR = 1e-10


@dataclass(frozen=True)
class WpcaModel:
    """Fitted whitening projection.

    Attributes:
        mean: Gallery mean, length ``dim``.
        components: ``(d_out, dim)`` orthonormal principal directions.
        eigenvalues: Covariance eigenvalues of the retained directions.
        epsilon: Whitening floor added to every eigenvalue.
        source: Identifier of the gallery the model was learned from.
    """

    mean: np.ndarray
    components: np.ndarray
    eigenvalues: np.ndarray
    epsilon: float
    source: str = "gallery"

    @cached_property
    def projection(self) -> np.ndarray:
        """Components scaled row-wise by ``1 / sqrt(lambda + epsilon)``."""
        return self.components / np.sqrt(self.eigenvalues + self.epsilon)[:, None]

    @property
    def dim_in(self) -> int:
        return int(self.mean.shape[0])

    @property
    def dim_out(self) -> int:
        return int(self.components.shape[0])


def _as_matrix(features: Sequence[FeatureVector] | np.ndarray) -> np.ndarray:
    if isinstance(features, np.ndarray):
        matrix = np.asarray(features, dtype=np.float64)
        if matrix.ndim != 2:
            raise ParameterError(f"Expected an (n, dim) feature matrix, got shape {matrix.shape}", name="gallery")
        return matrix
    if not features:
        raise ParameterError("Gallery is empty", name="gallery")
    dim = features[0].dim
    for f in features:
        if f.dim != dim:
            raise DimensionMismatchError("Gallery features differ in length", expected=dim, got=f.dim)
    return np.stack([f.values for f in features])


def fit_wpca(
    gallery: Sequence[FeatureVector] | np.ndarray,
    d_out: int,
    *,
    source: str = "gallery",
) -> WpcaModel:
    """Learn a ``d_out``-dimensional whitening projection from gallery descriptors.

    Eigenvalues use the unbiased ``n - 1`` covariance convention, so the
    projected gallery has unit sample variance on every retained axis.

    Raises:
        ParameterError: If the gallery has fewer than two entries or ``d_out < 1``.
        RankDeficientError: If ``d_out`` exceeds the centered gallery's numeric rank.
    """
    x = _as_matrix(gallery)
    n, dim = x.shape
    if n < 2:
        raise ParameterError(f"WPCA needs at least 2 gallery vectors, got {n}", name="gallery")
    if d_out < 1:
        raise ParameterError(f"WPCA output dimension must be >= 1, got {d_out}", name="d_out")

    mean = x.mean(axis=0)
    _, singular, vt = linalg.svd(x - mean, full_matrices=False)
    eigenvalues = singular**2 / (n - 1)
    rank = numeric_rank(eigenvalues, max(n, dim))
    if d_out > rank:
        raise RankDeficientError(
            f"Centered gallery supports only {rank} WPCA dimensions",
            rank=rank,
            requested=d_out,
        )

    components = np.stack([fix_sign(vt[j]) for j in range(d_out)])
    return WpcaModel(
        mean=mean,
        components=components,
        eigenvalues=eigenvalues[:d_out].copy(),
        epsilon=WHITENING_FLOOR * float(eigenvalues[0]),
        source=source,
    )


def project_wpca(model: WpcaModel, feature: FeatureVector | np.ndarray) -> FeatureVector:
    values = feature.values if isinstance(feature, FeatureVector) else np.asarray(feature, dtype=np.float64)
    if values.ndim != 1 or values.shape[0] != model.dim_in:
        raise DimensionMismatchError(
            "Feature length does not match the WPCA model",
            expected=model.dim_in,
            got=int(values.shape[-1]) if values.ndim else 0,
        )
    return FeatureVector(values=model.projection @ (values - model.mean), stage=FeatureStage.WPCA)


def project_many(model: WpcaModel, features: Sequence[FeatureVector]) -> list[FeatureVector]:
    return [project_wpca(model, f) for f in features]
