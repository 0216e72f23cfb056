"""Cosine nearest-neighbour identification."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from dctnet.errors import DimensionMismatchError, ParameterError, ZeroVectorError
from dctnet.features.types import FeatureStage, FeatureVector
from dctnet.features.wpca import WpcaModel


def _values(v: FeatureVector | np.ndarray) -> np.ndarray:
    return v.values if isinstance(v, FeatureVector) else np.asarray(v, dtype=np.float64)


def cosine_distance(a: FeatureVector | np.ndarray, b: FeatureVector | np.ndarray) -> float:
    """``1 - a.b / (|a| |b|)`` in [0, 2].

    A zero vector against a nonzero one is at distance 1.

    Raises:
        DimensionMismatchError: If the lengths differ.
        ZeroVectorError: If both vectors are all zero.
    """
    va, vb = _values(a), _values(b)
    if va.shape != vb.shape:
        raise DimensionMismatchError("Vectors differ in length", expected=va.shape[-1], got=vb.shape[-1])
    na, nb = float(np.linalg.norm(va)), float(np.linalg.norm(vb))
    if na == 0.0 and nb == 0.0:
        raise ZeroVectorError()
    if na == 0.0 or nb == 0.0:
        return 1.0
    return float(np.clip(1.0 - np.dot(va, vb) / (na * nb), 0.0, 2.0))


def _unit_rows(matrix: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=1, keepdims=True)
    return np.divide(matrix, norms, out=np.zeros_like(matrix), where=norms > 0)


@dataclass(frozen=True)
class GallerySet:
    """Enrolled descriptors and their subject ids, in enrolment order."""

    subjects: np.ndarray
    features: np.ndarray
    stage: FeatureStage
    wpca: WpcaModel | None = None
    _unit: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        features = np.asarray(self.features, dtype=np.float64)
        subjects = np.asarray(self.subjects, dtype=np.int64)
        if features.ndim != 2 or features.shape[0] == 0:
            raise ParameterError("Gallery must hold at least one feature vector", name="gallery")
        if subjects.shape != (features.shape[0],):
            raise ParameterError("Gallery needs exactly one subject id per feature", name="subjects")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "subjects", subjects)
        object.__setattr__(self, "_unit", _unit_rows(features))

    @classmethod
    def from_entries(
        cls,
        entries: Sequence[tuple[int, FeatureVector]],
        *,
        wpca: WpcaModel | None = None,
    ) -> GallerySet:
        if not entries:
            raise ParameterError("Gallery must hold at least one feature vector", name="gallery")
        stage = entries[0][1].stage
        dim = entries[0][1].dim
        for _, f in entries:
            if f.stage is not stage:
                raise ParameterError(f"Gallery mixes feature stages {stage.value} and {f.stage.value}", name="gallery")
            if f.dim != dim:
                raise DimensionMismatchError("Gallery features differ in length", expected=dim, got=f.dim)
        return cls(
            subjects=np.array([s for s, _ in entries]),
            features=np.stack([f.values for _, f in entries]),
            stage=stage,
            wpca=wpca,
        )

    @property
    def size(self) -> int:
        return int(self.features.shape[0])

    @property
    def dim(self) -> int:
        return int(self.features.shape[1])

    def distances(self, probe: FeatureVector | np.ndarray) -> np.ndarray:
        """Cosine distance from ``probe`` to every entry."""
        values = _values(probe)
        if values.shape != (self.dim,):
            raise DimensionMismatchError("Probe length does not match the gallery", expected=self.dim, got=values.shape[-1])
        norm = float(np.linalg.norm(values))
        if norm == 0.0:
            raise ZeroVectorError("Cannot match an all-zero probe")
        return np.clip(1.0 - self._unit @ (values / norm), 0.0, 2.0)


def identify(probe: FeatureVector | np.ndarray, gallery: GallerySet) -> tuple[int, float]:
    """Subject and distance of the nearest gallery entry; ties go to the lowest index."""
    dist = gallery.distances(probe)
    best = int(np.argmin(dist))
    return int(gallery.subjects[best]), float(dist[best])
