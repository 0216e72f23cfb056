"""Filters command workflow -- build DCT banks, save them, render them."""

from __future__ import annotations

import time
from pathlib import Path

from dctnet.commands import elapsed_ms
from dctnet.errors import DctNetError
from dctnet.filters.types import FilterBank
from dctnet.output.schema import CommandResult


def describe_bank(layer: int, bank: FilterBank) -> dict:
    entry: dict = {"layer": layer, "k": bank.k, "count": bank.count, "policy": bank.policy.value}
    if bank.flip_axis:
        entry["flip_axis"] = True
    bases = [list(f.basis) for f in bank.filters if f.basis is not None]
    if bases:
        entry["bases"] = bases
    if bank.eigenvalues is not None:
        entry["eigenvalues"] = [float(v) for v in bank.eigenvalues]
    return entry


def filters_workflow(
    k: int = 5,
    count: int = 8,
    order: str = "horizontal-major",
    layers: int = 2,
    flip_axis: bool = False,
    out: str | None = None,
    emit_pgm: str | None = None,
    upscale: int = 1,
) -> CommandResult:
    """Build one DCTNet bank per layer and optionally persist and render it.

    Args:
        k: Odd filter size.
        count: Filters per layer (scan positions 2..count+1).
        order: ``horizontal-major`` or ``zigzag``.
        layers: Number of identical layers.
        flip_axis: Transpose the scan order.
        out: Filter-bank file to write.
        emit_pgm: Directory for per-filter PGMs and a montage.
        upscale: Integer nearest-neighbour enlargement of rendered filters.
    """
    from dctnet.filters.bankfile import write_banks
    from dctnet.filters.dct import build_dct_banks
    from dctnet.filters.render import emit_filter_pgms

    start = time.monotonic()
    try:
        banks = build_dct_banks(k, [count] * layers, order, flip_axis=flip_axis)
        result: dict = {"layers": [describe_bank(i, b) for i, b in enumerate(banks, start=1)]}
        if out:
            result["bank_file"] = str(write_banks(out, banks))
        if emit_pgm:
            result["pgm_files"] = [str(p) for p in emit_filter_pgms(banks, Path(emit_pgm), upscale)]
        return CommandResult.ok(result=result, duration_ms=elapsed_ms(start))
    except (DctNetError, ValueError, OSError) as e:
        return CommandResult.error(str(e), duration_ms=elapsed_ms(start))
