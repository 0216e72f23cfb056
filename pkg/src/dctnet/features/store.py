"""Binary feature-store files.

Layout (little-endian)::

    header   4s magic "DCTF" | u16 version | u8 stage | u32 dim | u32 count
    records  count x (u32 subject | u16 group | dim x f32 values)

Group ids index the label list kept in a JSON sidecar next to the store
(``<name>.json``), together with the source path of every record.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from dctnet.errors import FeatureStoreFormatError, ParameterError
from dctnet.features.types import FeatureStage
from dctnet.fileio import atomic_write_bytes, atomic_write_text

MAGIC = b"DCTF"
VERSION = 1

_HEADER = struct.Struct("<4sHBII")

_STAGE_CODES = {
    FeatureStage.RAW_HIST: 0,
    FeatureStage.TR_NORMALIZED: 1,
    FeatureStage.WPCA: 2,
}
_STAGE_BY_CODE = {code: stage for stage, code in _STAGE_CODES.items()}


def record_dtype(dim: int) -> np.dtype:
    return np.dtype([("subject", "<u4"), ("group", "<u2"), ("values", "<f4", (dim,))])


@dataclass(frozen=True)
class FeatureStoreHeader:
    stage: FeatureStage
    dim: int
    count: int
    version: int = VERSION


@dataclass
class FeatureStore:
    """Descriptors of many images with their subject and group ids."""

    stage: FeatureStage
    subjects: np.ndarray
    groups: np.ndarray
    values: np.ndarray
    group_labels: list[str] = field(default_factory=list)
    paths: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float32)
        if self.values.ndim != 2:
            raise ParameterError(f"Feature values must be (count, dim), got shape {self.values.shape}", name="values")
        self.subjects = np.asarray(self.subjects, dtype=np.uint32)
        self.groups = np.asarray(self.groups, dtype=np.uint16)
        count = self.values.shape[0]
        if self.subjects.shape != (count,) or self.groups.shape != (count,):
            raise ParameterError("Subject and group ids must have one entry per feature", name="subjects")

    @property
    def count(self) -> int:
        return int(self.values.shape[0])

    @property
    def dim(self) -> int:
        return int(self.values.shape[1])


def encode_features(store: FeatureStore) -> bytes:
    records = np.zeros(store.count, dtype=record_dtype(store.dim))
    records["subject"] = store.subjects
    records["group"] = store.groups
    records["values"] = store.values
    header = _HEADER.pack(MAGIC, VERSION, _STAGE_CODES[store.stage], store.dim, store.count)
    return header + records.tobytes()


def decode_header(data: bytes, *, path: str | None = None) -> FeatureStoreHeader:
    if len(data) < _HEADER.size:
        raise FeatureStoreFormatError("Truncated feature-store header", path=path)
    magic, version, stage, dim, count = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FeatureStoreFormatError(f"Bad magic {magic!r}, expected {MAGIC!r}", path=path)
    if version != VERSION:
        raise FeatureStoreFormatError(f"Unsupported feature-store version {version}", path=path)
    if stage not in _STAGE_BY_CODE:
        raise FeatureStoreFormatError(f"Unknown stage code {stage}", path=path)
    return FeatureStoreHeader(stage=_STAGE_BY_CODE[stage], dim=dim, count=count, version=version)


def decode_features(data: bytes, *, path: str | None = None) -> FeatureStore:
    header = decode_header(data, path=path)
    dtype = record_dtype(header.dim)
    expected = _HEADER.size + header.count * dtype.itemsize
    if len(data) != expected:
        raise FeatureStoreFormatError(f"Expected {expected} bytes for {header.count} records, got {len(data)}", path=path)
    records = np.frombuffer(data, dtype=dtype, count=header.count, offset=_HEADER.size)
    return FeatureStore(
        stage=header.stage,
        subjects=records["subject"].copy(),
        groups=records["group"].copy(),
        values=records["values"].copy(),
    )


def sidecar_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def write_feature_store(path: str | Path, store: FeatureStore) -> Path:
    """Write the binary store and its JSON sidecar."""
    path = Path(path)
    atomic_write_bytes(path, encode_features(store))
    sidecar = {"groups": store.group_labels, "paths": store.paths, "stage": store.stage.value}
    atomic_write_text(sidecar_path(path), json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    return path


def _read_bytes(path: Path) -> bytes:
    try:
        return path.read_bytes()
    except OSError as exc:
        raise FeatureStoreFormatError(f"Cannot read feature store: {exc}", path=str(path)) from exc


def read_feature_store(path: str | Path) -> FeatureStore:
    path = Path(path)
    store = decode_features(_read_bytes(path), path=str(path))
    side = sidecar_path(path)
    if side.is_file():
        try:
            meta = json.loads(side.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise FeatureStoreFormatError(f"Unreadable sidecar: {exc}", path=str(side)) from exc
        store.group_labels = list(meta.get("groups", []))
        store.paths = list(meta.get("paths", []))
    return store


def read_feature_header(path: str | Path) -> FeatureStoreHeader:
    path = Path(path)
    return decode_header(_read_bytes(path), path=str(path))
