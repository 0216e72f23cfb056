"""Filter banks: DCT construction and selection, PCA learning, persistence."""

from dctnet.filters.types import Filter, FilterBank, ScanPolicy
from dctnet.filters.dct import (
    DEFAULT_K,
    DEFAULT_LAYERS,
    DEFAULT_P,
    build_dct_banks,
    dct2_basis,
    scan_order,
    select_dctnet_filters,
)
from dctnet.filters.pca import (
    PatchMatrix,
    PatchScatter,
    accumulate_scatter,
    extract_patches,
    layer_inputs,
    learn_layered_pca,
    learn_pca_bank,
)
from dctnet.filters.bankfile import (
    BankLayerInfo,
    decode_banks,
    describe_banks,
    encode_banks,
    read_banks,
    write_banks,
)

__all__ = [
    "DEFAULT_K",
    "DEFAULT_LAYERS",
    "DEFAULT_P",
    "BankLayerInfo",
    "Filter",
    "FilterBank",
    "PatchMatrix",
    "PatchScatter",
    "ScanPolicy",
    "accumulate_scatter",
    "build_dct_banks",
    "dct2_basis",
    "decode_banks",
    "describe_banks",
    "encode_banks",
    "extract_patches",
    "layer_inputs",
    "learn_layered_pca",
    "learn_pca_bank",
    "read_banks",
    "scan_order",
    "select_dctnet_filters",
    "write_banks",
]
