"""Render filter banks as 8-bit grayscale images."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from dctnet.data.images import write_pgm
from dctnet.errors import ParameterError
from dctnet.filters.types import Filter, FilterBank

MONTAGE_GAP = 1
MONTAGE_BACKGROUND = 0


def to_uint8(coefficients: np.ndarray) -> np.ndarray:
    """Min-max scale to [0, 255]; a constant filter renders mid-gray."""
    arr = np.asarray(coefficients, dtype=np.float64)
    lo, hi = float(arr.min()), float(arr.max())
    if hi == lo:
        return np.full(arr.shape, 128, dtype=np.uint8)
    return np.rint((arr - lo) / (hi - lo) * 255.0).astype(np.uint8)


def upscale(pixels: np.ndarray, factor: int) -> np.ndarray:
    """Nearest-neighbour enlargement by an integer factor."""
    if factor < 1:
        raise ParameterError(f"Upscale factor must be >= 1, got {factor}", name="upscale")
    return np.repeat(np.repeat(pixels, factor, axis=0), factor, axis=1)


def render_filter(f: Filter, factor: int = 1) -> np.ndarray:
    return upscale(to_uint8(f.coefficients), factor)


def montage(banks: list[FilterBank], factor: int = 1) -> np.ndarray:
    """All banks side by side: one row per layer, filters left to right."""
    if not banks:
        raise ParameterError("At least one filter bank is required", name="banks")
    cell = max(b.k for b in banks) * factor
    step = cell + MONTAGE_GAP
    columns = max(b.count for b in banks)
    canvas = np.full(
        (len(banks) * step - MONTAGE_GAP, columns * step - MONTAGE_GAP),
        MONTAGE_BACKGROUND,
        dtype=np.uint8,
    )
    for row, bank in enumerate(banks):
        for col, f in enumerate(bank.filters):
            tile = render_filter(f, factor)
            top, left = row * step, col * step
            canvas[top : top + tile.shape[0], left : left + tile.shape[1]] = tile
    return canvas


def emit_filter_pgms(banks: list[FilterBank], out_dir: str | Path, factor: int = 1) -> list[Path]:
    """Write ``layer{l}_filter{p}.pgm`` for every filter plus ``montage.pgm``."""
    out_dir = Path(out_dir)
    written = [
        write_pgm(out_dir / f"layer{layer}_filter{index:02d}.pgm", render_filter(f, factor))
        for layer, bank in enumerate(banks, start=1)
        for index, f in enumerate(bank.filters, start=1)
    ]
    written.append(write_pgm(out_dir / "montage.pgm", montage(banks, factor)))
    return written
