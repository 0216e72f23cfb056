"""Gallery/probe dataset manifests.

A manifest is a UTF-8 CSV with the exact header ``path,subject,role,group``.
Fields are split on every comma and never unquoted, so paths containing
commas are rejected. Relative paths resolve against the manifest's folder.
"""

from __future__ import annotations

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, ValidationError

from dctnet.errors import ManifestError
from dctnet.fileio import atomic_write_text

HEADER = "path,subject,role,group"
MAX_SUBJECT_ID = 2**32 - 1
MAX_GROUPS = 2**16


class ManifestRow(BaseModel):
    path: str = Field(min_length=1)
    subject: int = Field(ge=0, le=MAX_SUBJECT_ID)
    role: Literal["gallery", "probe"]
    group: str = Field(min_length=1)


class DatasetManifest(BaseModel):
    """Validated closed-set identification split."""

    rows: list[ManifestRow]
    base_dir: str = "."

    @property
    def gallery(self) -> list[ManifestRow]:
        return [r for r in self.rows if r.role == "gallery"]

    @property
    def probes(self) -> list[ManifestRow]:
        return [r for r in self.rows if r.role == "probe"]

    @property
    def group_labels(self) -> list[str]:
        """Every group label in order of first appearance."""
        return list(dict.fromkeys(r.group for r in self.rows))

    @property
    def probe_groups(self) -> list[str]:
        return list(dict.fromkeys(r.group for r in self.probes))

    def resolve(self, row: ManifestRow) -> Path:
        path = Path(row.path)
        return path if path.is_absolute() else Path(self.base_dir) / path

    def to_csv(self) -> str:
        lines = [HEADER]
        lines.extend(f"{r.path},{r.subject},{r.role},{r.group}" for r in self.rows)
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        atomic_write_text(path, self.to_csv())
        return path

    @classmethod
    def parse(cls, text: str, *, path: str | None = None, base_dir: str | Path = ".") -> DatasetManifest:
        """Parse and validate manifest text.

        Raises:
            ManifestError: On a bad header, malformed row, duplicate path,
                empty gallery, or a probe subject missing from the gallery.
        """
        lines = text.lstrip("\ufeff").splitlines()
        if not lines or lines[0].strip() != HEADER:
            raise ManifestError(f"Manifest header must be exactly '{HEADER}'", path=path, line=1)

        rows: list[ManifestRow] = []
        seen: dict[str, int] = {}
        for number, raw in enumerate(lines[1:], start=2):
            if not raw.strip():
                continue
            fields = raw.split(",")
            if len(fields) != 4:
                raise ManifestError(
                    f"Expected 4 comma-separated fields, got {len(fields)} (paths may not contain commas)",
                    path=path,
                    line=number,
                )
            file_path, subject, role, group = (f.strip() for f in fields)
            try:
                row = ManifestRow(path=file_path, subject=subject, role=role, group=group)
            except ValidationError as exc:
                detail = "; ".join(f"{err['loc'][0]}: {err['msg']}" for err in exc.errors())
                raise ManifestError(f"Invalid row: {detail}", path=path, line=number) from exc
            if row.path in seen:
                raise ManifestError(f"Duplicate path '{row.path}' (first on line {seen[row.path]})", path=path, line=number)
            seen[row.path] = number
            rows.append(row)

        manifest = cls(rows=rows, base_dir=str(base_dir))
        if not manifest.gallery:
            raise ManifestError("Manifest has no gallery rows", path=path)
        enrolled = {r.subject for r in manifest.gallery}
        for r in manifest.probes:
            if r.subject not in enrolled:
                raise ManifestError(f"Probe subject {r.subject} has no gallery image", path=path, line=seen[r.path])
        if len(manifest.group_labels) > MAX_GROUPS:
            raise ManifestError(f"At most {MAX_GROUPS} distinct groups are supported", path=path)
        return manifest

    @classmethod
    def load(cls, path: str | Path) -> DatasetManifest:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise ManifestError(f"Cannot read manifest: {exc}", path=str(path)) from exc
        return cls.parse(text, path=str(path), base_dir=path.parent)
