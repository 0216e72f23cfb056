"""Dataset ingestion: manifests, images, pipeline configs, synthetic data."""

from dctnet.data.config import PipelineConfig
from dctnet.data.images import load_image_grayscale, write_pgm
from dctnet.data.manifest import DatasetManifest, ManifestRow
from dctnet.data.synthetic import SyntheticSettings, generate_synthetic_dataset, markov_field

__all__ = [
    "DatasetManifest",
    "ManifestRow",
    "PipelineConfig",
    "SyntheticSettings",
    "generate_synthetic_dataset",
    "load_image_grayscale",
    "markov_field",
    "write_pgm",
]
