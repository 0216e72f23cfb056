"""Image loading and PGM writing.

Inputs are 8-bit grayscale or color files (PGM, PNG and anything else
Pillow decodes in those modes). Color is reduced to ITU-R BT.601 luminance,
the largest centered region with the target aspect ratio is cut out, and
that region is resized bilinearly when it does not already have the target
size. Pixel values stay on the [0, 255] scale as float64.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from dctnet.errors import ImageLoadError, ParameterError, UnsupportedImageError
from dctnet.fileio import atomic_write_bytes

LUMA_WEIGHTS = np.array([0.299, 0.587, 0.114])

_GRAY_MODES = {"L", "LA"}
_COLOR_MODES = {"RGB", "RGBA", "P"}


def _luminance(img: Image.Image, path: str) -> np.ndarray:
    if img.mode in _GRAY_MODES:
        return np.asarray(img.convert("L"), dtype=np.float64)
    if img.mode in _COLOR_MODES:
        rgb = np.asarray(img.convert("RGB"), dtype=np.float64)
        return rgb @ LUMA_WEIGHTS
    raise UnsupportedImageError(path=path, mode=img.mode)


def center_crop(gray: np.ndarray, height: int, width: int) -> np.ndarray:
    """Largest centered region of ``gray`` with aspect ratio ``width / height``."""
    rows, cols = gray.shape
    if cols * height > rows * width:
        keep = max(1, round(rows * width / height))
        left = (cols - keep) // 2
        return gray[:, left : left + keep]
    keep = max(1, round(cols * height / width))
    top = (rows - keep) // 2
    return gray[top : top + keep, :]


def fit_to_size(gray: np.ndarray, height: int, width: int) -> np.ndarray:
    """Center-crop then bilinearly resize to ``(height, width)``; exact sizes pass through."""
    if gray.shape == (height, width):
        return gray
    cropped = center_crop(gray, height, width)
    if cropped.shape == (height, width):
        return np.ascontiguousarray(cropped)
    resized = Image.fromarray(cropped.astype(np.float32)).resize((width, height), Image.Resampling.BILINEAR)
    return np.asarray(resized, dtype=np.float64)


def load_image_grayscale(path: str | Path, size: tuple[int, int] | None = None) -> np.ndarray:
    """Read an 8-bit image as a float64 luminance matrix in [0, 255].

    Args:
        path: Image file.
        size: Target ``(height, width)``; ``None`` keeps the source size.

    Raises:
        ImageLoadError: If the file is missing or cannot be decoded.
        UnsupportedImageError: If the image is not 8-bit gray or color.
    """
    path_str = str(path)
    try:
        with Image.open(path) as img:
            img.load()
            gray = _luminance(img, path_str)
    except UnsupportedImageError:
        raise
    except (FileNotFoundError, UnidentifiedImageError, Image.DecompressionBombError, OSError) as exc:
        raise ImageLoadError(path=path_str, reason=str(exc)) from exc

    if size is None:
        return gray
    height, width = size
    if height < 1 or width < 1:
        raise ParameterError(f"Target size must be positive, got {size}", name="size")
    return fit_to_size(gray, height, width)


def encode_pgm(pixels: np.ndarray) -> bytes:
    """Binary (P5) 8-bit PGM bytes for a 2D uint8 array."""
    arr = np.asarray(pixels)
    if arr.ndim != 2 or arr.dtype != np.uint8:
        raise ParameterError(f"PGM output needs a 2D uint8 array, got {arr.dtype} {arr.shape}", name="pixels")
    buf = io.BytesIO()
    Image.fromarray(arr).save(buf, format="PPM")
    return buf.getvalue()


def write_pgm(path: str | Path, pixels: np.ndarray) -> Path:
    path = Path(path)
    atomic_write_bytes(path, encode_pgm(pixels))
    return path
