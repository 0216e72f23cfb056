"""Public library API for dctnet.

Exposes async functions that wrap the workflow modules, adding event bus
integration. Library consumers use these functions directly instead of the
CLI.

Usage::

    from dctnet import build_filters, evaluate_protocol, verify_klt

    result = await build_filters(k=5, count=8, out="bank.dctb", event_bus=bus)
    report = await evaluate_protocol("feret1.csv", config="configs/feret1.toml")
    klt = await verify_klt(0.999, 8)

All functions accept an optional ``event_bus`` parameter. When provided,
lifecycle events are emitted on success and failure, and extraction
progress is reported as ``PROGRESS_UPDATE`` events. When omitted, a
default (no-op) EventBus is created internally.

Workflow imports are lazy (inside function bodies) so importing the
package stays cheap.
"""

from __future__ import annotations

from dctnet.events import EventBus, EventType
from dctnet.output.schema import CommandResult


def _progress(bus: EventBus, command: str):
    def report(done: int, total: int) -> None:
        bus.emit(EventType.PROGRESS_UPDATE, {"command": command, "done": done, "total": total})

    return report


async def _finish(
    bus: EventBus,
    command: str,
    result: CommandResult,
    success_event: EventType,
    payload: dict | None = None,
) -> CommandResult:
    if result.success:
        await bus.emit_async(success_event, {"command": command, **(payload or {})})
    else:
        await bus.emit_async(EventType.ERROR, {"command": command, "errors": result.errors})
    return result


async def build_filters(
    *,
    k: int = 5,
    count: int = 8,
    order: str = "horizontal-major",
    layers: int = 2,
    flip_axis: bool = False,
    out: str | None = None,
    emit_pgm: str | None = None,
    upscale: int = 1,
    event_bus: EventBus | None = None,
) -> CommandResult:
    """Build DCTNet filter banks.

    Wraps :func:`~dctnet.commands.filters.filters_workflow`; emits
    ``BANK_READY`` on success.
    """
    import anyio

    from dctnet.commands.filters import filters_workflow

    bus = event_bus or EventBus()
    result = await anyio.to_thread.run_sync(
        lambda: filters_workflow(
            k=k,
            count=count,
            order=order,
            layers=layers,
            flip_axis=flip_axis,
            out=out,
            emit_pgm=emit_pgm,
            upscale=upscale,
        )
    )
    return await _finish(bus, "filters", result, EventType.BANK_READY, {"source": "dct", "bank_file": out})


async def learn_pca(
    manifest: str,
    out: str,
    *,
    config: str | None = None,
    k: int | None = None,
    per_layer: list[int] | None = None,
    workers: int | None = None,
    emit_pgm: str | None = None,
    upscale: int = 1,
    event_bus: EventBus | None = None,
) -> CommandResult:
    """Learn PCA filter banks from a manifest's gallery, optionally rendering them.

    Wraps :func:`~dctnet.commands.learn_pca.learn_pca_workflow`; emits
    ``BANK_READY`` on success.
    """
    from dctnet.commands.learn_pca import learn_pca_workflow

    bus = event_bus or EventBus()
    result = await learn_pca_workflow(
        manifest=manifest,
        out=out,
        config=config,
        k=k,
        per_layer=per_layer,
        workers=workers,
        emit_pgm=emit_pgm,
        upscale=upscale,
    )
    return await _finish(bus, "learn-pca", result, EventType.BANK_READY, {"source": "pca", "bank_file": out})


async def extract_features(
    manifest: str,
    out: str,
    *,
    config: str | None = None,
    workers: int | None = None,
    event_bus: EventBus | None = None,
) -> CommandResult:
    """Extract a feature store for every manifest image.

    Wraps :func:`~dctnet.commands.extract.extract_workflow`; emits
    ``FEATURES_EXTRACTED`` on success.
    """
    from dctnet.commands.extract import extract_workflow

    bus = event_bus or EventBus()
    result = await extract_workflow(
        manifest=manifest,
        config=config,
        out=out,
        workers=workers,
        on_progress=_progress(bus, "extract"),
    )
    payload = {"store": out}
    if result.success and isinstance(result.result, dict):
        payload["count"] = result.result.get("count")
    return await _finish(bus, "extract", result, EventType.FEATURES_EXTRACTED, payload)


async def evaluate_protocol(
    manifest: str,
    *,
    config: str | None = None,
    report: str | None = None,
    tr_norm: bool | None = None,
    wpca_dim: int | None = None,
    workers: int | None = None,
    event_bus: EventBus | None = None,
) -> CommandResult:
    """Run a gallery/probe identification protocol.

    Wraps :func:`~dctnet.commands.evaluate.evaluate_workflow`; emits
    ``EVALUATION_COMPLETE`` with the group-mean rate on success.
    """
    from dctnet.commands.evaluate import evaluate_workflow

    bus = event_bus or EventBus()
    result = await evaluate_workflow(
        manifest=manifest,
        config=config,
        report=report,
        tr_norm=tr_norm,
        wpca_dim=wpca_dim,
        workers=workers,
        on_progress=_progress(bus, "evaluate"),
    )
    payload = {}
    if isinstance(result.result, dict):
        payload["average"] = result.result.get("average")
    return await _finish(bus, "evaluate", result, EventType.EVALUATION_COMPLETE, payload)


async def verify_klt(
    r: float,
    n: int,
    *,
    csv: str | None = None,
    report: str | None = None,
    threshold: float = 0.999,
    event_bus: EventBus | None = None,
) -> CommandResult:
    """Check Markov KLT convergence to the DCT for one model.

    Wraps :func:`~dctnet.commands.verify_klt.verify_klt_workflow`.
    """
    from dctnet.commands.verify_klt import verify_klt_workflow

    bus = event_bus or EventBus()
    result = verify_klt_workflow(r=r, n=n, csv=csv, report=report, threshold=threshold)
    return await _finish(bus, "verify-klt", result, EventType.PROGRESS_UPDATE, {"status": "complete"})


async def inspect_file(path: str, *, event_bus: EventBus | None = None) -> CommandResult:
    """Summarize a filter-bank or feature-store file header."""
    from dctnet.commands.inspect_file import inspect_workflow

    bus = event_bus or EventBus()
    result = inspect_workflow(path)
    return await _finish(bus, "inspect", result, EventType.PROGRESS_UPDATE, {"status": "complete"})


async def make_synthetic(
    out_dir: str,
    *,
    subjects: int = 20,
    size: int = 64,
    probes_per_subject: int = 1,
    noise_sigma: float = 10.0,
    max_shift: int = 2,
    seed: int = 0,
    event_bus: EventBus | None = None,
) -> CommandResult:
    """Generate the seeded synthetic gallery/probe dataset."""
    import anyio

    from dctnet.commands.synthetic import make_synthetic_workflow

    bus = event_bus or EventBus()
    result = await anyio.to_thread.run_sync(
        lambda: make_synthetic_workflow(
            out_dir=out_dir,
            subjects=subjects,
            size=size,
            probes_per_subject=probes_per_subject,
            noise_sigma=noise_sigma,
            max_shift=max_shift,
            seed=seed,
        )
    )
    return await _finish(bus, "make-synthetic", result, EventType.PROGRESS_UPDATE, {"status": "complete"})
