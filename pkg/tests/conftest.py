"""dctnet test configuration."""

from pathlib import Path

import numpy as np
import pytest


@pytest.fixture
def anyio_backend() -> str:
    return "asyncio"


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def synthetic_dir(tmp_path_factory: pytest.TempPathFactory) -> Path:
    """The default 20-subject synthetic dataset, written once per session."""
    from dctnet.data.synthetic import SyntheticSettings, generate_synthetic_dataset

    out = tmp_path_factory.mktemp("synthetic")
    generate_synthetic_dataset(out, SyntheticSettings())
    return out


@pytest.fixture
def tiny_dataset(tmp_path: Path) -> Path:
    """Three subjects of 32x32 images, one probe each; returns the manifest path."""
    from dctnet.data.synthetic import SyntheticSettings, generate_synthetic_dataset

    generate_synthetic_dataset(tmp_path, SyntheticSettings(subjects=3, size=32, seed=7))
    return tmp_path / "manifest.csv"


@pytest.fixture
def tiny_config(tmp_path: Path) -> Path:
    """Pipeline config matching :func:`tiny_dataset`."""
    path = tmp_path / "tiny.toml"
    path.write_text(
        "[image]\nheight = 32\nwidth = 32\n\n"
        "[filters]\nk = 5\nper_layer = [4, 4]\n\n"
        "[histogram]\nblock = [16, 16]\n\n"
        "[run]\nworkers = 2\n",
        encoding="utf-8",
    )
    return path
