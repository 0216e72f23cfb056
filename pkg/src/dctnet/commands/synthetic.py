"""Make-synthetic command workflow -- seeded band-limited test subjects."""

from __future__ import annotations

import time
from pathlib import Path

from dctnet.commands import elapsed_ms
from dctnet.errors import DctNetError
from dctnet.output.schema import CommandResult


def make_synthetic_workflow(
    out_dir: str,
    subjects: int = 20,
    size: int = 64,
    probes_per_subject: int = 1,
    noise_sigma: float = 10.0,
    max_shift: int = 2,
    seed: int = 0,
) -> CommandResult:
    """Write gallery/probe PGMs and ``manifest.csv`` into ``out_dir``."""
    from dctnet.data.synthetic import SyntheticSettings, generate_synthetic_dataset

    start = time.monotonic()
    try:
        settings = SyntheticSettings(
            subjects=subjects,
            size=size,
            probes_per_subject=probes_per_subject,
            noise_sigma=noise_sigma,
            max_shift=max_shift,
            seed=seed,
        )
        manifest = generate_synthetic_dataset(out_dir, settings)
        result = {
            "manifest": str(Path(out_dir) / "manifest.csv"),
            "gallery": len(manifest.gallery),
            "probes": len(manifest.probes),
        }
        return CommandResult.ok(result=result, duration_ms=elapsed_ms(start))
    except (DctNetError, OSError) as e:
        return CommandResult.error(str(e), duration_ms=elapsed_ms(start))
