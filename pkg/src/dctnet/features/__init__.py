"""Descriptors: TR normalization, whitening PCA, feature stores, extraction."""

from dctnet.features.types import FeatureStage, FeatureVector
from dctnet.features.tr_norm import normalize_segments, raw_feature, tied_rank_nonzero, tr_normalize
from dctnet.features.wpca import WpcaModel, fit_wpca, project_many, project_wpca
from dctnet.features.store import (
    FeatureStore,
    FeatureStoreHeader,
    read_feature_header,
    read_feature_store,
    write_feature_store,
)
from dctnet.features.extractor import (
    ExtractionOutcome,
    FeaturePipeline,
    build_banks,
    load_many,
    pipeline_for_manifest,
)

__all__ = [
    "ExtractionOutcome",
    "FeaturePipeline",
    "FeatureStage",
    "FeatureStore",
    "FeatureStoreHeader",
    "FeatureVector",
    "WpcaModel",
    "build_banks",
    "fit_wpca",
    "load_many",
    "normalize_segments",
    "pipeline_for_manifest",
    "project_many",
    "project_wpca",
    "raw_feature",
    "read_feature_header",
    "read_feature_store",
    "tied_rank_nonzero",
    "tr_normalize",
    "write_feature_store",
]
