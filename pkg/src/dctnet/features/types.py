"""Feature vector value type."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from dctnet.errors import ParameterError


class FeatureStage(str, Enum):
    """Processing stage a descriptor has reached."""

    RAW_HIST = "raw_hist"
    TR_NORMALIZED = "tr_normalized"
    WPCA = "wpca"


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    stage: FeatureStage

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ParameterError(f"Feature values must be 1D, got shape {values.shape}", name="values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "stage", FeatureStage(self.stage))

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])
