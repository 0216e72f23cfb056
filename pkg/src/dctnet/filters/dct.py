"""2D DCT filter banks and basis selection.

Bases in one antidiagonal (constant ``u + v``) are treated as equally
ranked; antidiagonals are visited from low to high frequency. Within an
antidiagonal the zigzag policy alternates direction each turn, as in
baseline JPEG, while the horizontal-major policy always starts from the
basis with the highest ``v`` (lowest ``u``). ``flip_axis`` transposes either
order, swapping which index is favoured.

DCTNet banks skip the DC basis and take scan positions 2..P+1.
"""

from __future__ import annotations

import numpy as np

from dctnet.errors import ParameterError
from dctnet.filters.types import Filter, FilterBank, ScanPolicy
from dctnet.theory.markov import dct_limit_basis

DEFAULT_K = 5
DEFAULT_P = 8
DEFAULT_LAYERS = 2


def dct2_basis(k: int, u: int, v: int, *, layer: int = 1) -> Filter:
    """2D DCT-II basis as the outer product of 1D bases ``u`` (rows) and ``v`` (columns)."""
    if k < 1:
        raise ParameterError(f"Filter size must be >= 1, got {k}", name="k")
    for name, index in (("u", u), ("v", v)):
        if not 0 <= index < k:
            raise ParameterError(f"Basis index {name} must be in [0, {k - 1}], got {index}", name=name)
    coeffs = np.outer(dct_limit_basis(k, u), dct_limit_basis(k, v))
    return Filter(coefficients=coeffs, layer=layer, basis=(u, v))


def scan_order(
    k: int,
    policy: ScanPolicy | str = ScanPolicy.HORIZONTAL_MAJOR,
    *,
    flip_axis: bool = False,
) -> list[tuple[int, int]]:
    """Visit all ``k * k`` basis indices antidiagonal by antidiagonal.

    Raises:
        ParameterError: If ``k < 1`` or the policy is not a scan policy.
    """
    policy = ScanPolicy(policy)
    if k < 1:
        raise ParameterError(f"Filter size must be >= 1, got {k}", name="k")
    if policy is ScanPolicy.LEARNED:
        raise ParameterError("'learned' is not a scan policy", name="policy")

    order: list[tuple[int, int]] = []
    for s in range(2 * k - 1):
        us = list(range(max(0, s - k + 1), min(s, k - 1) + 1))
        if policy is ScanPolicy.ZIGZAG and s % 2 == 0:
            us.reverse()
        order.extend((u, s - u) for u in us)

    if flip_axis:
        order = [(v, u) for u, v in order]
    return order


def select_dctnet_filters(
    k: int = DEFAULT_K,
    count: int = DEFAULT_P,
    policy: ScanPolicy | str = ScanPolicy.HORIZONTAL_MAJOR,
    *,
    flip_axis: bool = False,
    layer: int = 1,
) -> FilterBank:
    """Bank of the ``count`` bases at scan positions 2..count+1 (DC omitted)."""
    policy = ScanPolicy(policy)
    if k % 2 == 0:
        raise ParameterError(f"Filter size must be odd, got {k}", name="k")
    if not 1 <= count <= k * k - 1:
        raise ParameterError(f"Filter count must be in [1, {k * k - 1}] for k={k}, got {count}", name="P")

    chosen = scan_order(k, policy, flip_axis=flip_axis)[1 : count + 1]
    filters = tuple(dct2_basis(k, u, v, layer=layer) for u, v in chosen)
    return FilterBank(filters=filters, policy=policy, flip_axis=flip_axis)


def build_dct_banks(
    k: int = DEFAULT_K,
    per_layer: list[int] | tuple[int, ...] = (DEFAULT_P,) * DEFAULT_LAYERS,
    policy: ScanPolicy | str = ScanPolicy.HORIZONTAL_MAJOR,
    *,
    flip_axis: bool = False,
) -> list[FilterBank]:
    """One DCTNet bank per layer."""
    if not per_layer:
        raise ParameterError("At least one layer is required", name="per_layer")
    return [
        select_dctnet_filters(k, count, policy, flip_axis=flip_axis, layer=layer)
        for layer, count in enumerate(per_layer, start=1)
    ]
