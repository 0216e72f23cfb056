"""Shared eigen-decomposition helpers.

Every eigenvector this package returns passes through :func:`fix_sign`, so
banks, KLT vectors and WPCA projections are reproducible across runs.
"""

from __future__ import annotations

import numpy as np
from scipy import linalg


def fix_sign(vector: np.ndarray, rtol: float = 1e-9) -> np.ndarray:
    """Return ``vector`` negated if needed so its first largest-magnitude element is positive.

    Elements within ``rtol`` of the maximum magnitude count as tied and the
    lowest index among them decides.
    """
    v = np.asarray(vector, dtype=np.float64)
    mags = np.abs(v)
    peak = mags.max(initial=0.0)
    if peak == 0.0:
        return v.copy()
    idx = int(np.flatnonzero(mags >= peak * (1.0 - rtol))[0])
    return -v if v[idx] < 0 else v.copy()


def sorted_eigh(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Symmetric eigendecomposition sorted by descending eigenvalue.

    Tied eigenvalues keep LAPACK's index order (stable sort), and each
    eigenvector column is sign-fixed.

    Returns:
        ``(eigenvalues, eigenvectors)`` with eigenvectors as columns.
    """
    values, vectors = linalg.eigh(np.asarray(matrix, dtype=np.float64))
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    for j in range(vectors.shape[1]):
        vectors[:, j] = fix_sign(vectors[:, j])
    return values, vectors


def numeric_rank(values: np.ndarray, size: int) -> int:
    """Count eigenvalues (or squared singular values) above the LAPACK-style tolerance."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        return 0
    peak = float(values.max())
    if peak <= 0.0:
        return 0
    tol = peak * size * np.finfo(np.float64).eps * 10.0
    return int(np.count_nonzero(values > tol))
