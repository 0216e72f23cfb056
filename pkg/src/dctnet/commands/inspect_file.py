"""Inspect command workflow -- dump filter-bank or feature-store headers."""

from __future__ import annotations

import time
from pathlib import Path

from dctnet.commands import elapsed_ms
from dctnet.errors import DctNetError
from dctnet.output.schema import CommandResult


def inspect_workflow(path: str) -> CommandResult:
    """Identify ``path`` by its magic and summarize its header."""
    from dctnet.features import store as feature_store
    from dctnet.filters import bankfile

    start = time.monotonic()
    try:
        data = Path(path).read_bytes()
        magic = data[:4]
        if magic == bankfile.MAGIC:
            layers = bankfile.describe_banks(data, path=path)
            result = {
                "kind": "filter-bank",
                "version": bankfile.VERSION,
                "layers": [
                    {
                        "layer": info.layer,
                        "k": info.k,
                        "count": info.count,
                        "policy": info.policy.value,
                        "flip_axis": info.flip_axis,
                        "has_eigenvalues": info.has_eigenvalues,
                    }
                    for info in layers
                ],
            }
        elif magic == feature_store.MAGIC:
            header = feature_store.decode_header(data, path=path)
            result = {
                "kind": "feature-store",
                "version": header.version,
                "stage": header.stage.value,
                "dim": header.dim,
                "count": header.count,
            }
            if feature_store.sidecar_path(path).is_file():
                result["groups"] = feature_store.read_feature_store(path).group_labels
        else:
            return CommandResult.error(f"Unrecognized file magic {magic!r}: {path}", duration_ms=elapsed_ms(start))
        return CommandResult.ok(result=result, duration_ms=elapsed_ms(start))
    except (DctNetError, OSError) as e:
        return CommandResult.error(str(e), duration_ms=elapsed_ms(start))
