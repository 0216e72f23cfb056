"""Cosine nearest-neighbour matching and protocol evaluation."""

from dctnet.matching.matcher import GallerySet, cosine_distance, identify
from dctnet.matching.evaluate import evaluate, score_identification

__all__ = ["GallerySet", "cosine_distance", "evaluate", "identify", "score_identification"]
