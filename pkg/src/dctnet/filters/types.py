"""Filter and filter-bank value types.

Uses frozen dataclasses (not Pydantic) since these wrap numpy arrays and
are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from dctnet.errors import ParameterError


class ScanPolicy(str, Enum):
    """How a bank's filters were ordered and selected."""

    ZIGZAG = "zigzag"
    HORIZONTAL_MAJOR = "horizontal-major"
    LEARNED = "learned"


@dataclass(frozen=True)
class Filter:
    """A single k x k filter.

    Attributes:
        coefficients: Real k x k matrix.
        layer: 1-based layer index this filter belongs to.
        basis: DCT basis indices ``(u, v)`` with ``u`` the frequency down
            the rows and ``v`` across the columns; ``None`` for learned filters.
    """

    coefficients: np.ndarray
    layer: int = 1
    basis: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coefficients, dtype=np.float64)
        if coeffs.ndim != 2 or coeffs.shape[0] != coeffs.shape[1]:
            raise ParameterError(f"Filter must be square, got shape {coeffs.shape}", name="coefficients")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def k(self) -> int:
        return int(self.coefficients.shape[0])

    @property
    def tag(self) -> tuple[int, tuple[int, int] | None]:
        return (self.layer, self.basis)


@dataclass(frozen=True)
class FilterBank:
    """Ordered filters of one network layer.

    Invariants: all filters share an odd size k, basis tags are unique, and
    DCT-ordered banks never contain the DC basis.
    """

    filters: tuple[Filter, ...]
    policy: ScanPolicy
    flip_axis: bool = False
    eigenvalues: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "filters", tuple(self.filters))
        if not self.filters:
            raise ParameterError("A filter bank needs at least one filter", name="filters")
        sizes = {f.k for f in self.filters}
        if len(sizes) != 1:
            raise ParameterError(f"All filters in a bank must share one size, got {sorted(sizes)}", name="k")
        k = sizes.pop()
        if k % 2 == 0:
            raise ParameterError(f"Filter size must be odd so the pad (k - 1) / 2 is integral, got {k}", name="k")
        tags = [f.basis for f in self.filters if f.basis is not None]
        if len(tags) != len(set(tags)):
            raise ParameterError("Duplicate basis tags in filter bank", name="filters")
        if self.policy is not ScanPolicy.LEARNED and (0, 0) in tags:
            raise ParameterError("DCT filter banks must not contain the DC basis (0, 0)", name="filters")

    @property
    def k(self) -> int:
        return self.filters[0].k

    @property
    def count(self) -> int:
        return len(self.filters)

    @property
    def layer(self) -> int:
        return self.filters[0].layer

    def stack(self) -> np.ndarray:
        """All coefficients as a ``(P, k, k)`` array in bank order."""
        return np.stack([f.coefficients for f in self.filters])
