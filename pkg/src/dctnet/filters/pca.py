"""PCA-learned filter banks (the data-driven counterpart of DCT banks).

Learning never materializes the full patch matrix for a gallery: each image
contributes a ``k^2 x k^2`` scatter matrix and scatters merge by addition,
so accumulation can be split across images and workers freely.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import reduce

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from dctnet.errors import ParameterError, RankDeficientError
from dctnet.filters.types import Filter, FilterBank, ScanPolicy
from dctnet.linalg import numeric_rank, sorted_eigh
from dctnet.network.cascade import forward_cascade

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PatchMatrix:
    """Vectorized stride-1 patches of one or more images.

    Attributes:
        patches: ``(k*k, M)`` array, one column-major vectorized patch per column.
        k: Patch size.
        source_shapes: Shape of every image the patches came from.
        mean_removed: Whether each column had its own mean subtracted.
    """

    patches: np.ndarray
    k: int
    source_shapes: tuple[tuple[int, int], ...]
    mean_removed: bool = True

    @property
    def count(self) -> int:
        return int(self.patches.shape[1])


def extract_patches(image: np.ndarray, k: int, *, remove_mean: bool = True) -> PatchMatrix:
    """All overlapping ``k x k`` patches of an image, unpadded.

    Patch positions are visited row-major; each patch is vectorized
    column-major and, with ``remove_mean``, centered on its own mean.

    Raises:
        ParameterError: If the image is smaller than ``k`` in either dimension.
    """
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim != 2:
        raise ParameterError(f"Expected a 2D grayscale image, got shape {arr.shape}", name="image")
    if k < 1:
        raise ParameterError(f"Patch size must be >= 1, got {k}", name="k")
    rows, cols = arr.shape
    if rows < k or cols < k:
        raise ParameterError(f"Image {arr.shape} is smaller than the patch size {k}", name="k")

    windows = sliding_window_view(arr, (k, k))
    patches = windows.transpose(0, 1, 3, 2).reshape(-1, k * k).T.copy()
    if remove_mean:
        patches -= patches.mean(axis=0, keepdims=True)
    return PatchMatrix(patches=patches, k=k, source_shapes=((rows, cols),), mean_removed=remove_mean)


@dataclass(frozen=True)
class PatchScatter:
    """Running ``X @ X.T`` over vectorized patches plus the patch count."""

    scatter: np.ndarray
    count: int
    k: int

    @classmethod
    def empty(cls, k: int) -> PatchScatter:
        return cls(scatter=np.zeros((k * k, k * k)), count=0, k=k)

    @classmethod
    def from_patches(cls, patches: PatchMatrix) -> PatchScatter:
        x = patches.patches
        return cls(scatter=x @ x.T, count=patches.count, k=patches.k)

    @classmethod
    def from_image(cls, image: np.ndarray, k: int, *, remove_mean: bool = True) -> PatchScatter:
        return cls.from_patches(extract_patches(image, k, remove_mean=remove_mean))

    def __add__(self, other: PatchScatter) -> PatchScatter:
        if not isinstance(other, PatchScatter):
            return NotImplemented
        if other.k != self.k:
            raise ParameterError(f"Cannot merge scatters of patch sizes {self.k} and {other.k}", name="k")
        return PatchScatter(scatter=self.scatter + other.scatter, count=self.count + other.count, k=self.k)

    def covariance(self) -> np.ndarray:
        """``(1 / M) X X^T``; no global mean is subtracted."""
        if self.count == 0:
            raise ParameterError("No patches accumulated", name="patches")
        return self.scatter / self.count


def learn_pca_bank(data: PatchMatrix | PatchScatter, count: int, *, layer: int = 1) -> FilterBank:
    """Top-``count`` eigenvectors of the patch covariance as ``k x k`` filters.

    Raises:
        ParameterError: If fewer than ``k^2`` patches are available or
            ``count`` is outside ``[1, k^2]``.
        RankDeficientError: If ``count`` exceeds the covariance's numeric rank.
    """
    scatter = PatchScatter.from_patches(data) if isinstance(data, PatchMatrix) else data
    k = scatter.k
    dim = k * k
    if scatter.count < dim:
        raise ParameterError(f"Need at least {dim} patches to learn {k}x{k} filters, got {scatter.count}", name="patches")
    if not 1 <= count <= dim:
        raise ParameterError(f"Filter count must be in [1, {dim}] for k={k}, got {count}", name="P")

    values, vectors = sorted_eigh(scatter.covariance())
    rank = numeric_rank(values, dim)
    if count > rank:
        raise RankDeficientError(
            f"Patch covariance supports only {rank} filters",
            rank=rank,
            requested=count,
        )

    filters = tuple(Filter(coefficients=vectors[:, j].reshape(k, k, order="F"), layer=layer) for j in range(count))
    return FilterBank(filters=filters, policy=ScanPolicy.LEARNED, eigenvalues=values[:count].copy())


def accumulate_scatter(images: list[np.ndarray], k: int, *, remove_mean: bool = True) -> PatchScatter:
    """Sum of per-image scatters, in image order."""
    return reduce(
        lambda acc, img: acc + PatchScatter.from_image(img, k, remove_mean=remove_mean),
        images,
        PatchScatter.empty(k),
    )


def layer_inputs(image: np.ndarray, banks: list[FilterBank]) -> np.ndarray:
    """Maps that feed the layer after ``banks``, each a single-channel image.

    With no banks this is the image itself, as a one-map stack.
    """
    arr = np.asarray(image, dtype=np.float64)
    if not banks:
        return arr[None]
    return forward_cascade(arr, banks).maps.reshape(-1, *arr.shape)


def learn_layered_pca(
    images: Sequence[np.ndarray],
    layers: int = 2,
    k: int = 5,
    per_layer: int | list[int] | tuple[int, ...] = 8,
    *,
    remove_mean: bool = True,
) -> list[FilterBank]:
    """Learn one PCA bank per layer, PCANet style.

    Layer 1 is learned from the input images. Every later layer is learned
    from the pooled response maps of all previous-layer filters, each map
    treated as a grayscale image of its own. Responses are recomputed one
    image at a time and folded into the layer's scatter immediately, so
    memory stays flat in the gallery size.
    """
    if layers < 1:
        raise ParameterError(f"Layer count must be >= 1, got {layers}", name="layers")
    if not images:
        raise ParameterError("At least one training image is required", name="images")
    counts = [per_layer] * layers if isinstance(per_layer, int) else list(per_layer)
    if len(counts) != layers:
        raise ParameterError(f"Expected {layers} per-layer filter counts, got {len(counts)}", name="per_layer")

    banks: list[FilterBank] = []
    for layer, count in enumerate(counts, start=1):
        scatter = PatchScatter.empty(k)
        for image in images:
            for response in layer_inputs(image, banks):
                scatter = scatter + PatchScatter.from_image(response, k, remove_mean=remove_mean)
        bank = learn_pca_bank(scatter, count, layer=layer)
        logger.debug("Learned layer %d: %d filters from %d patches", layer, bank.count, scatter.count)
        banks.append(bank)
    return banks
