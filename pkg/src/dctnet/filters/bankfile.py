"""Binary filter-bank container shared by DCT and PCA-learned banks.

Layout (little-endian)::

    header        4s magic "DCTB" | u16 version | u16 layer count
    layer table   per layer: u16 k | u16 P | u8 policy | u8 flags
    coefficients  per layer, in table order: P * k * k f64, row-major,
                  filters in bank order
    eigenvalues   per layer with flags bit 1 set, in table order: P f64

Every layer header precedes all coefficient data, so the table can be read
without touching the payload. Flags bit 0 records the scan axis flip. DCT
basis tags are not stored; they are rebuilt from the scan order on read.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from dctnet.errors import BankFormatError, ParameterError
from dctnet.fileio import atomic_write_bytes
from dctnet.filters.dct import scan_order
from dctnet.filters.types import Filter, FilterBank, ScanPolicy

MAGIC = b"DCTB"
VERSION = 1

_HEADER = struct.Struct("<4sHH")
_LAYER = struct.Struct("<HHBB")

_FLAG_FLIP = 0x01
_FLAG_EIGENVALUES = 0x02

_POLICY_CODES = {
    ScanPolicy.HORIZONTAL_MAJOR: 0,
    ScanPolicy.ZIGZAG: 1,
    ScanPolicy.LEARNED: 2,
}
_POLICY_BY_CODE = {code: policy for policy, code in _POLICY_CODES.items()}


@dataclass(frozen=True)
class BankLayerInfo:
    layer: int
    k: int
    count: int
    policy: ScanPolicy
    flip_axis: bool
    has_eigenvalues: bool


def encode_banks(banks: list[FilterBank]) -> bytes:
    if not banks:
        raise ParameterError("At least one filter bank is required", name="banks")
    parts = [_HEADER.pack(MAGIC, VERSION, len(banks))]
    for bank in banks:
        flags = (_FLAG_FLIP if bank.flip_axis else 0) | (_FLAG_EIGENVALUES if bank.eigenvalues is not None else 0)
        parts.append(_LAYER.pack(bank.k, bank.count, _POLICY_CODES[bank.policy], flags))
    parts.extend(bank.stack().astype("<f8").tobytes() for bank in banks)
    parts.extend(np.asarray(b.eigenvalues, dtype="<f8").tobytes() for b in banks if b.eigenvalues is not None)
    return b"".join(parts)


class _Reader:
    def __init__(self, data: bytes, path: str | None) -> None:
        self.data = data
        self.path = path
        self.offset = 0

    def take(self, size: int, what: str) -> bytes:
        end = self.offset + size
        if end > len(self.data):
            raise BankFormatError(f"Truncated filter-bank file while reading {what}", path=self.path)
        chunk = self.data[self.offset : end]
        self.offset = end
        return chunk


def _read_layer_header(reader: _Reader, layer: int) -> BankLayerInfo:
    k, count, code, flags = _LAYER.unpack(reader.take(_LAYER.size, f"layer {layer} header"))
    if code not in _POLICY_BY_CODE:
        raise BankFormatError(f"Unknown policy code {code} in layer {layer}", path=reader.path)
    if k < 1 or count < 1:
        raise BankFormatError(f"Invalid layer {layer} geometry k={k} P={count}", path=reader.path)
    return BankLayerInfo(
        layer=layer,
        k=k,
        count=count,
        policy=_POLICY_BY_CODE[code],
        flip_axis=bool(flags & _FLAG_FLIP),
        has_eigenvalues=bool(flags & _FLAG_EIGENVALUES),
    )


def _read_header(reader: _Reader) -> int:
    magic, version, layers = _HEADER.unpack(reader.take(_HEADER.size, "header"))
    if magic != MAGIC:
        raise BankFormatError(f"Bad magic {magic!r}, expected {MAGIC!r}", path=reader.path)
    if version != VERSION:
        raise BankFormatError(f"Unsupported filter-bank version {version}", path=reader.path)
    if layers < 1:
        raise BankFormatError("Filter-bank file holds no layers", path=reader.path)
    return layers


def _build_bank(info: BankLayerInfo, coeffs: np.ndarray, eigenvalues: np.ndarray | None, path: str | None) -> FilterBank:
    if info.policy is ScanPolicy.LEARNED:
        tags: list[tuple[int, int] | None] = [None] * info.count
    else:
        order = scan_order(info.k, info.policy, flip_axis=info.flip_axis)
        if info.count > len(order) - 1:
            raise BankFormatError(f"Layer {info.layer} has more filters than non-DC bases", path=path)
        tags = list(order[1 : info.count + 1])
    filters = tuple(Filter(coefficients=c, layer=info.layer, basis=tag) for c, tag in zip(coeffs, tags))
    try:
        return FilterBank(filters=filters, policy=info.policy, flip_axis=info.flip_axis, eigenvalues=eigenvalues)
    except ParameterError as exc:
        raise BankFormatError(f"Layer {info.layer} violates bank invariants: {exc.message}", path=path) from exc


def decode_banks(data: bytes, *, path: str | None = None) -> list[FilterBank]:
    reader = _Reader(data, path)
    infos = _read_layer_table(reader)
    coeffs = []
    for info in infos:
        n = info.count * info.k * info.k
        raw = np.frombuffer(reader.take(8 * n, f"layer {info.layer} coefficients"), dtype="<f8")
        coeffs.append(raw.astype(np.float64).reshape(info.count, info.k, info.k))
    eigenvalues: list[np.ndarray | None] = []
    for info in infos:
        if info.has_eigenvalues:
            raw = np.frombuffer(reader.take(8 * info.count, f"layer {info.layer} eigenvalues"), dtype="<f8")
            eigenvalues.append(raw.astype(np.float64))
        else:
            eigenvalues.append(None)
    if reader.offset != len(data):
        raise BankFormatError(f"{len(data) - reader.offset} trailing bytes after last layer", path=path)
    return [_build_bank(info, c, e, path) for info, c, e in zip(infos, coeffs, eigenvalues)]


def _read_layer_table(reader: _Reader) -> list[BankLayerInfo]:
    layers = _read_header(reader)
    return [_read_layer_header(reader, layer) for layer in range(1, layers + 1)]


def describe_banks(data: bytes, *, path: str | None = None) -> list[BankLayerInfo]:
    """Layer table only; the size of the payload is checked, its values are not."""
    reader = _Reader(data, path)
    infos = _read_layer_table(reader)
    payload = sum(i.count * i.k * i.k + (i.count if i.has_eigenvalues else 0) for i in infos)
    reader.take(8 * payload, "payload")
    return infos


def write_banks(path: str | Path, banks: list[FilterBank]) -> Path:
    path = Path(path)
    atomic_write_bytes(path, encode_banks(banks))
    return path


def read_banks(path: str | Path) -> list[FilterBank]:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise BankFormatError(f"Cannot read filter-bank file: {exc}", path=str(path)) from exc
    return decode_banks(data, path=str(path))
