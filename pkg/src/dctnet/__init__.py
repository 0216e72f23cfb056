"""dctnet: DCT filter-bank face descriptors with tied-rank normalization.

Public API (lazy-loaded so ``dctnet --version`` does not import numpy):

    from dctnet import build_filters, learn_pca, extract_features
    from dctnet import evaluate_protocol, verify_klt, inspect_file, make_synthetic
    from dctnet import EventBus, EventType, Event
"""

from dctnet._version import __version__

__all__ = [
    "__version__",
    "build_filters",
    "learn_pca",
    "extract_features",
    "evaluate_protocol",
    "verify_klt",
    "inspect_file",
    "make_synthetic",
    "EventBus",
    "EventType",
    "Event",
]


def __getattr__(name: str):
    _api_names = {
        "build_filters",
        "learn_pca",
        "extract_features",
        "evaluate_protocol",
        "verify_klt",
        "inspect_file",
        "make_synthetic",
    }
    if name in _api_names:
        from dctnet import api

        return getattr(api, name)

    _event_names = {"EventBus", "EventType", "Event"}
    if name in _event_names:
        from dctnet import events

        return getattr(events, name)

    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
