"""Synthetic test subjects and correlated image fields.

Each synthetic "subject" is a band-limited random pattern: white noise
smoothed with a Gaussian, rescaled to a fixed mean and contrast and clipped
to [0, 255]. Probes are integer-shifted copies with additive Gaussian noise.
Everything is seeded, so the same arguments always write the same bytes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import ndimage, signal

from dctnet.data.images import write_pgm
from dctnet.data.manifest import DatasetManifest, ManifestRow
from dctnet.errors import ParameterError

logger = logging.getLogger(__name__)

PATTERN_MEAN = 128.0
PATTERN_STD = 45.0
GALLERY_GROUP = "gallery"
PROBE_GROUP = "noisy-shifted"
MARKOV_BURN_IN = 64


@dataclass(frozen=True)
class SyntheticSettings:
    subjects: int = 20
    size: int = 64
    probes_per_subject: int = 1
    noise_sigma: float = 10.0
    max_shift: int = 2
    blur_sigma: float = 2.0
    seed: int = 0


def band_limited_pattern(size: int, blur_sigma: float, rng: np.random.Generator) -> np.ndarray:
    field = ndimage.gaussian_filter(rng.standard_normal((size, size)), blur_sigma, mode="wrap")
    field = (field - field.mean()) / field.std()
    return np.clip(PATTERN_MEAN + PATTERN_STD * field, 0.0, 255.0)


def degrade(image: np.ndarray, shift: tuple[int, int], noise_sigma: float, rng: np.random.Generator) -> np.ndarray:
    """Integer shift (edge pixels replicated) plus additive Gaussian noise, clipped."""
    moved = ndimage.shift(image, shift, order=0, mode="nearest")
    return np.clip(moved + rng.normal(0.0, noise_sigma, size=image.shape), 0.0, 255.0)


def markov_field(shape: tuple[int, int], r: float, rng: np.random.Generator) -> np.ndarray:
    """Zero-mean separable first-order Markov field with unit variance.

    Neighbouring-pixel correlation is ``r`` along both axes, so the
    covariance between pixels is ``r**|di| * r**|dj|``.
    """
    if not 0.0 <= r < 1.0:
        raise ParameterError(f"Correlation must be in [0, 1), got {r}", name="r")
    rows, cols = shape
    noise = rng.standard_normal((rows + MARKOV_BURN_IN, cols + MARKOV_BURN_IN))
    gain = np.sqrt(1.0 - r * r)
    field = signal.lfilter([gain], [1.0, -r], noise, axis=0)
    field = signal.lfilter([gain], [1.0, -r], field, axis=1)
    return field[MARKOV_BURN_IN:, MARKOV_BURN_IN:]


def _to_uint8(image: np.ndarray) -> np.ndarray:
    return np.rint(image).astype(np.uint8)


def generate_synthetic_dataset(out_dir: str | Path, settings: SyntheticSettings = SyntheticSettings()) -> DatasetManifest:
    """Write gallery and probe PGMs plus ``manifest.csv`` under ``out_dir``.

    Returns:
        The manifest, with paths relative to ``out_dir``.
    """
    if settings.subjects < 1 or settings.size < 1 or settings.probes_per_subject < 0 or settings.max_shift < 0:
        raise ParameterError("Synthetic dataset sizes must be positive", name="settings")
    out_dir = Path(out_dir)
    rng = np.random.default_rng(settings.seed)
    rows: list[ManifestRow] = []
    for subject in range(settings.subjects):
        pattern = _to_uint8(band_limited_pattern(settings.size, settings.blur_sigma, rng))
        name = f"gallery/s{subject:03d}.pgm"
        write_pgm(out_dir / name, pattern)
        rows.append(ManifestRow(path=name, subject=subject, role="gallery", group=GALLERY_GROUP))
        for index in range(settings.probes_per_subject):
            shift = tuple(int(s) for s in rng.integers(-settings.max_shift, settings.max_shift + 1, size=2))
            probe = _to_uint8(degrade(pattern.astype(np.float64), shift, settings.noise_sigma, rng))
            name = f"probe/s{subject:03d}_{index}.pgm"
            write_pgm(out_dir / name, probe)
            rows.append(ManifestRow(path=name, subject=subject, role="probe", group=PROBE_GROUP))

    manifest = DatasetManifest(rows=rows, base_dir=str(out_dir))
    manifest.write(out_dir / "manifest.csv")
    logger.debug("Wrote %d synthetic images to %s", len(rows), out_dir)
    return manifest
