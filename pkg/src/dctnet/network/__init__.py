"""Forward DCTNet pipeline: convolution cascade, encoding, histograms."""

from dctnet.network.cascade import ResponseStack, convolve_bank, forward_cascade
from dctnet.network.encoding import (
    BlockHistogramSet,
    CodeImage,
    binarize_encode,
    block_histogram,
    block_histograms,
)

__all__ = [
    "BlockHistogramSet",
    "CodeImage",
    "ResponseStack",
    "binarize_encode",
    "block_histogram",
    "block_histograms",
    "convolve_bank",
    "forward_cascade",
]
