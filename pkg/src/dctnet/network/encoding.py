"""Binarization, integer encoding and block-wise histogramming.

Block grids that do not divide the image keep the remainder as smaller edge
blocks; no pixel is discarded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dctnet.errors import ParameterError

MAX_CODE_BITS = 30


@dataclass(frozen=True)
class CodeImage:
    """Integer code map; every value lies in ``[0, 2**bits - 1]``."""

    codes: np.ndarray
    bits: int

    @property
    def bins(self) -> int:
        return 1 << self.bits


@dataclass(frozen=True)
class BlockHistogramSet:
    """Block-wise code histograms for D channels.

    ``counts`` has shape ``(D, B, 2**bits)`` with blocks in row-major grid
    order.
    """

    counts: np.ndarray
    bits: int
    block: tuple[int, int]
    grid: tuple[int, int]
    image_shape: tuple[int, int]

    @property
    def channels(self) -> int:
        return int(self.counts.shape[0])

    @property
    def blocks(self) -> int:
        return int(self.counts.shape[1])

    @property
    def bins(self) -> int:
        return int(self.counts.shape[2])


def binarize_encode(maps: np.ndarray) -> CodeImage:
    """Threshold responses at zero and pack them into one integer per pixel.

    Map ``p`` (0-based) contributes bit ``2**p`` where its response is
    strictly positive; exact zeros give bit 0.
    """
    stack = np.asarray(maps)
    if stack.ndim != 3:
        raise ParameterError(f"Expected P same-size maps as a (P, rows, cols) array, got shape {stack.shape}", name="maps")
    bits = int(stack.shape[0])
    if not 1 <= bits <= MAX_CODE_BITS:
        raise ParameterError(f"Number of maps must be in [1, {MAX_CODE_BITS}], got {bits}", name="maps")
    weights = np.left_shift(np.uint64(1), np.arange(bits, dtype=np.uint64))
    codes = np.tensordot(weights, (stack > 0).astype(np.uint64), axes=1).astype(np.uint32)
    return CodeImage(codes=codes, bits=bits)


def _grid(shape: tuple[int, int], block: tuple[int, int]) -> tuple[int, int]:
    rows, cols = shape
    h, w = block
    if not (1 <= h <= rows and 1 <= w <= cols):
        raise ParameterError(f"Block {block} must fit inside the image {shape}", name="block")
    return math.ceil(rows / h), math.ceil(cols / w)


def _block_counts(codes: np.ndarray, bins: int, block: tuple[int, int], grid: tuple[int, int]) -> np.ndarray:
    rows, cols = codes.shape
    h, w = block
    block_index = (np.arange(rows) // h)[:, None] * grid[1] + (np.arange(cols) // w)[None, :]
    flat = block_index.astype(np.int64) * bins + codes.astype(np.int64)
    return np.bincount(flat.ravel(), minlength=grid[0] * grid[1] * bins).reshape(grid[0] * grid[1], bins)


def block_histogram(code: CodeImage, block: tuple[int, int]) -> BlockHistogramSet:
    """Histogram of every non-overlapping block of a single code image."""
    return block_histograms([code], block)


def block_histograms(codes: list[CodeImage], block: tuple[int, int]) -> BlockHistogramSet:
    """Stack the block histograms of D same-size code images."""
    if not codes:
        raise ParameterError("At least one code image is required", name="codes")
    shape = codes[0].codes.shape
    bits = codes[0].bits
    if any(c.codes.shape != shape or c.bits != bits for c in codes):
        raise ParameterError("All code images must share shape and bit depth", name="codes")
    block = (int(block[0]), int(block[1]))
    grid = _grid(shape, block)
    counts = np.stack([_block_counts(c.codes, 1 << bits, block, grid) for c in codes])
    return BlockHistogramSet(counts=counts, bits=bits, block=block, grid=grid, image_shape=(int(shape[0]), int(shape[1])))
