"""Pipeline configuration loaded from TOML protocol files."""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Any, Literal

import tomli_w
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from dctnet.errors import ConfigError
from dctnet.network.encoding import MAX_CODE_BITS

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class ImageSection(BaseModel):
    """Target crop size; images are cut and resized to ``height x width``."""

    model_config = ConfigDict(extra="forbid")

    height: int = Field(default=64, ge=1)
    width: int = Field(default=64, ge=1)


class FiltersSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: Literal["dct", "pca-learn", "bank"] = "dct"
    k: int = Field(default=5, ge=1)
    per_layer: list[int] = Field(default_factory=lambda: [8, 8], min_length=1)
    order: Literal["horizontal-major", "zigzag"] = "horizontal-major"
    flip_axis: bool = False
    bank: str | None = None

    @field_validator("k")
    @classmethod
    def _odd_k(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError(f"filter size must be odd, got {value}")
        return value

    @model_validator(mode="after")
    def _check_counts(self) -> FiltersSection:
        if self.source == "bank":
            if not self.bank:
                raise ValueError("filters.bank is required when filters.source = 'bank'")
            return self
        # mean-removed patch covariance has rank at most k^2 - 1
        limit = self.k * self.k - 1
        for count in self.per_layer:
            if not 1 <= count <= limit:
                raise ValueError(f"per-layer filter count must be in [1, {limit}] for k={self.k}, got {count}")
        if self.per_layer[-1] > MAX_CODE_BITS:
            raise ValueError(f"last layer may have at most {MAX_CODE_BITS} filters, got {self.per_layer[-1]}")
        return self

    @property
    def layers(self) -> int:
        return len(self.per_layer)


class HistogramSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    block: tuple[int, int] = (16, 16)
    tr_norm: bool = True

    @field_validator("block")
    @classmethod
    def _positive_block(cls, value: tuple[int, int]) -> tuple[int, int]:
        if min(value) < 1:
            raise ValueError(f"block dimensions must be positive, got {value}")
        return value


class WpcaSection(BaseModel):
    """``dim`` omitted means descriptors are matched without WPCA."""

    model_config = ConfigDict(extra="forbid")

    dim: int | None = Field(default=None, ge=1)


class RunSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    workers: int = Field(default=4, ge=1)


class PipelineConfig(BaseModel):
    """Full feature-extraction and matching protocol."""

    model_config = ConfigDict(extra="forbid")

    image: ImageSection = Field(default_factory=ImageSection)
    filters: FiltersSection = Field(default_factory=FiltersSection)
    histogram: HistogramSection = Field(default_factory=HistogramSection)
    wpca: WpcaSection = Field(default_factory=WpcaSection)
    run: RunSection = Field(default_factory=RunSection)

    @property
    def image_size(self) -> tuple[int, int]:
        return (self.image.height, self.image.width)

    @classmethod
    def from_dict(cls, data: dict[str, Any], *, path: str | None = None) -> PipelineConfig:
        try:
            return cls.model_validate(data)
        except ValidationError as exc:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in exc.errors()
            )
            raise ConfigError(f"Invalid pipeline config: {problems}", path=path) from exc

    @classmethod
    def from_toml(cls, text: str, *, path: str | None = None) -> PipelineConfig:
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"Malformed TOML: {exc}", path=path) from exc
        return cls.from_dict(data, path=path)

    @classmethod
    def load(cls, path: str | Path) -> PipelineConfig:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"Cannot read config: {exc}", path=str(path)) from exc
        return cls.from_toml(text, path=str(path))

    def to_toml(self) -> str:
        return tomli_w.dumps(self.model_dump(mode="json", exclude_none=True))

    def with_overrides(self, *, tr_norm: bool | None = None, wpca_dim: int | None = None) -> PipelineConfig:
        """Copy with the histogram normalization and/or WPCA dimension replaced."""
        update = self.model_dump()
        if tr_norm is not None:
            update["histogram"]["tr_norm"] = tr_norm
        if wpca_dim is not None:
            update["wpca"]["dim"] = wpca_dim if wpca_dim > 0 else None
        return PipelineConfig.from_dict(update)
