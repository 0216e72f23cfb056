"""Zero-padded convolution layers and their cascade.

Filters are applied as cross-correlation (no kernel flip): the response at
pixel ``(i, j)`` is ``sum_ab W[a, b] * I[i + a - c, j + b - c]`` with
``c = (k - 1) / 2`` and zeros outside the image, so every response map has
the input's size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy import ndimage

from dctnet.errors import ParameterError

if TYPE_CHECKING:
    from dctnet.filters.types import FilterBank


@dataclass(frozen=True)
class ResponseStack:
    """Real filter responses grouped into sets.

    ``maps`` has shape ``(D, P, rows, cols)``: D sets (one per parent map of
    the previous layer) of P responses each.
    """

    maps: np.ndarray
    layer: int

    @property
    def sets(self) -> int:
        return int(self.maps.shape[0])

    @property
    def per_set(self) -> int:
        return int(self.maps.shape[1])

    @property
    def image_shape(self) -> tuple[int, int]:
        return (int(self.maps.shape[2]), int(self.maps.shape[3]))


def _as_image(image: np.ndarray) -> np.ndarray:
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ParameterError(f"Expected a non-empty 2D grayscale image, got shape {arr.shape}", name="image")
    return arr


def _responses(image: np.ndarray, bank: FilterBank) -> list[np.ndarray]:
    return [ndimage.correlate(image, f.coefficients, mode="constant", cval=0.0) for f in bank.filters]


def convolve_bank(image: np.ndarray, bank: FilterBank) -> ResponseStack:
    """Apply every filter of ``bank`` to one single-channel image."""
    arr = _as_image(image)
    return ResponseStack(maps=np.stack(_responses(arr, bank))[None], layer=bank.layer)


def forward_cascade(image: np.ndarray, banks: list[FilterBank]) -> ResponseStack:
    """Run the convolution cascade with no inter-layer nonlinearity.

    Every output map of a layer is fed to the next bank as its own
    single-channel input. The result holds ``D = prod(P_1..P_{L-1})`` sets
    of ``P_L`` maps, ordered by their layer-(L-1) parent.
    """
    if not banks:
        raise ParameterError("At least one filter bank is required", name="banks")
    current = [_as_image(image)]
    for bank in banks[:-1]:
        current = [resp for img in current for resp in _responses(img, bank)]
    last = banks[-1]
    maps = np.stack([np.stack(_responses(img, last)) for img in current])
    return ResponseStack(maps=maps, layer=last.layer)
