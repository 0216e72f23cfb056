"""Tied-Rank histogram normalization.

Each block histogram is replaced by the average-tie ranks of its non-empty
bins (empty bins stay 0 and take no part in the ranking), square-rooted and
L2-normalized. Segments are concatenated channel by channel, blocks inside
each channel.
"""

from __future__ import annotations

import numpy as np
from scipy import stats

from dctnet.errors import ParameterError
from dctnet.features.types import FeatureStage, FeatureVector
from dctnet.network.encoding import BlockHistogramSet


def tied_rank_nonzero(hist: np.ndarray) -> np.ndarray:
    """Ranks 1..n of the nonzero bins along the last axis, ties averaged.

    Works on a single histogram or any stack of histograms.

    >>> tied_rank_nonzero(np.array([0, 3, 3, 7, 0, 1]))
    array([0. , 2.5, 2.5, 4. , 0. , 1. ])
    """
    counts = np.asarray(hist)
    if counts.size and counts.min() < 0:
        raise ParameterError("Histogram counts must be nonnegative", name="hist")
    if counts.size == 0:
        return counts.astype(np.float64)
    zero = counts == 0
    # zeros sort first and occupy ranks 1..z, so shifting by z ranks the rest from 1
    ranks = stats.rankdata(counts, method="average", axis=-1) - zero.sum(axis=-1, keepdims=True)
    ranks[zero] = 0.0
    return ranks


def normalize_segments(counts: np.ndarray) -> np.ndarray:
    """Tied-rank, square-root and L2-normalize every histogram along the last axis."""
    segments = np.sqrt(tied_rank_nonzero(counts))
    norms = np.linalg.norm(segments, axis=-1, keepdims=True)
    return np.divide(segments, norms, out=np.zeros_like(segments), where=norms > 0)


def tr_normalize(hists: BlockHistogramSet) -> FeatureVector:
    """TR-normalized descriptor of length ``2**bits * B * D``."""
    return FeatureVector(values=normalize_segments(hists.counts).reshape(-1), stage=FeatureStage.TR_NORMALIZED)


def raw_feature(hists: BlockHistogramSet) -> FeatureVector:
    """Concatenated raw counts, in the same order as :func:`tr_normalize`."""
    return FeatureVector(values=hists.counts.reshape(-1).astype(np.float64), stage=FeatureStage.RAW_HIST)
