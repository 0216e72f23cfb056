"""dctnet CLI entry point.

IMPORTANT: Do NOT import numerical, data or command modules at module level.
--version and --help must stay fast and must not pull in numpy/scipy.
"""

from __future__ import annotations

import asyncio
import logging
import sys
from typing import List, Optional

import typer

app = typer.Typer(
    name="dctnet",
    help="DCT filter-bank face descriptors: filters, features, evaluation and KLT checks.",
)


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        from dctnet._version import __version__

        typer.echo(f"dctnet {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        False,
        "--version",
        "-v",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit.",
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        help="Log debug detail to stderr.",
    ),
    quiet: bool = typer.Option(
        False,
        "--quiet",
        "-q",
        help="Suppress all output and events.",
    ),
    output_format: str = typer.Option(
        "json",
        "--output-format",
        help="Output format: json (default) or text.",
    ),
    ctx: typer.Context = typer.Context,
) -> None:
    """dctnet: DCTNet face descriptors and identification protocols."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["quiet"] = quiet
    ctx.obj["output_format"] = output_format


# ── Output helper ────────────────────────────────────────────────


def _output(result: object, quiet: bool, output_format: str = "json") -> None:
    """Print a CommandResult to stdout (unless quiet).

    Args:
        result: A CommandResult instance.
        quiet: If True, suppress all output.
        output_format: Either "json" (default) or "text" for human-readable.
    """
    if quiet:
        return
    if output_format == "text":
        from dctnet.output.formatter import format_text

        typer.echo(format_text(result))  # type: ignore[arg-type]
    else:
        typer.echo(result.to_json())  # type: ignore[union-attr]


def _finish(result: object, quiet: bool, ctx: typer.Context) -> None:
    _output(result, quiet, ctx.obj.get("output_format", "json"))
    if not result.success:  # type: ignore[union-attr]
        raise typer.Exit(code=1)


# ── Event bus helper ────────────────────────────────────────────


def _make_cli_bus():
    """Create EventBus with CLI JSON-line handler for all event types.

    The returned bus writes ``event: {json}`` lines to stderr for each
    lifecycle event, so progress can be followed alongside the primary
    JSON output on stdout.
    """
    from dctnet.events import EventBus, EventType
    from dctnet.events.cli_handler import cli_json_handler

    bus = EventBus()
    for event_type in EventType:
        bus.on(event_type, cli_json_handler)
    return bus


# ── Shared option resolution ────────────────────────────────────


def _resolve_options(
    ctx: typer.Context,
    verbose_opt: bool,
    quiet_opt: bool,
) -> tuple[bool, bool]:
    """Resolve per-command options with fallback to global ctx.obj values."""
    verbose = verbose_opt or ctx.obj.get("verbose", False)
    quiet = quiet_opt or ctx.obj.get("quiet", False)
    if verbose and not quiet:
        logging.basicConfig(
            level=logging.DEBUG,
            stream=sys.stderr,
            format="%(asctime)s %(name)s %(levelname)s %(message)s",
        )
    return verbose, quiet


VerboseOpt = typer.Option(False, "--verbose", help="Log debug detail to stderr.")
QuietOpt = typer.Option(False, "--quiet", help="Suppress all output and events.")


# ── Commands ─────────────────────────────────────────────────────


@app.command()
def filters(
    k: int = typer.Option(5, "--k", help="Odd filter size."),
    p: int = typer.Option(8, "--p", help="Filters per layer."),
    order: str = typer.Option(
        "horizontal-major",
        "--order",
        help="Scan policy: horizontal-major or zigzag.",
    ),
    layers: int = typer.Option(2, "--layers", help="Number of layers."),
    flip_axis: bool = typer.Option(
        False,
        "--flip-axis",
        help="Use the transposed (column-first) axis convention.",
    ),
    out: Optional[str] = typer.Option(None, "--out", help="Filter-bank file to write."),
    emit_pgm: Optional[str] = typer.Option(
        None,
        "--emit-pgm",
        help="Directory for per-filter PGMs and a montage.",
    ),
    upscale: int = typer.Option(1, "--upscale", help="Integer pixel upscale for PGMs."),
    verbose_opt: bool = VerboseOpt,
    quiet_opt: bool = QuietOpt,
    ctx: typer.Context = typer.Context,
) -> None:
    """Build DCT filter banks, optionally saving and rendering them."""
    _verbose, quiet = _resolve_options(ctx, verbose_opt, quiet_opt)

    from dctnet.api import build_filters

    bus = _make_cli_bus() if not quiet else None
    result = asyncio.run(
        build_filters(
            k=k,
            count=p,
            order=order,
            layers=layers,
            flip_axis=flip_axis,
            out=out,
            emit_pgm=emit_pgm,
            upscale=upscale,
            event_bus=bus,
        )
    )
    _finish(result, quiet, ctx)


@app.command("learn-pca")
def learn_pca(
    manifest: str = typer.Option(..., "--manifest", help="Dataset manifest CSV."),
    out: str = typer.Option(..., "--out", help="Filter-bank file to write."),
    config: Optional[str] = typer.Option(None, "--config", help="Pipeline config TOML."),
    k: Optional[int] = typer.Option(None, "--k", help="Override the filter size."),
    p: Optional[List[int]] = typer.Option(
        None,
        "--p",
        help="Filters per layer; repeat once per layer.",
    ),
    workers: Optional[int] = typer.Option(None, "--workers", help="Worker threads."),
    emit_pgm: Optional[str] = typer.Option(
        None,
        "--emit-pgm",
        help="Directory for per-filter PGMs and a montage of the learned banks.",
    ),
    upscale: int = typer.Option(1, "--upscale", help="Integer pixel upscale for PGMs."),
    verbose_opt: bool = VerboseOpt,
    quiet_opt: bool = QuietOpt,
    ctx: typer.Context = typer.Context,
) -> None:
    """Learn PCA filter banks from the manifest's gallery images."""
    _verbose, quiet = _resolve_options(ctx, verbose_opt, quiet_opt)

    from dctnet.api import learn_pca as learn_pca_api

    bus = _make_cli_bus() if not quiet else None
    result = asyncio.run(
        learn_pca_api(
            manifest,
            out,
            config=config,
            k=k,
            per_layer=list(p) if p else None,
            workers=workers,
            emit_pgm=emit_pgm,
            upscale=upscale,
            event_bus=bus,
        )
    )
    _finish(result, quiet, ctx)


@app.command()
def extract(
    manifest: str = typer.Option(..., "--manifest", help="Dataset manifest CSV."),
    out: str = typer.Option(..., "--out", help="Feature-store file to write."),
    config: Optional[str] = typer.Option(None, "--config", help="Pipeline config TOML."),
    workers: Optional[int] = typer.Option(None, "--workers", help="Worker threads."),
    verbose_opt: bool = VerboseOpt,
    quiet_opt: bool = QuietOpt,
    ctx: typer.Context = typer.Context,
) -> None:
    """Extract descriptors for every manifest image into a feature store."""
    _verbose, quiet = _resolve_options(ctx, verbose_opt, quiet_opt)

    from dctnet.api import extract_features

    bus = _make_cli_bus() if not quiet else None
    result = asyncio.run(
        extract_features(manifest, out, config=config, workers=workers, event_bus=bus)
    )
    _finish(result, quiet, ctx)


@app.command()
def evaluate(
    manifest: str = typer.Option(..., "--manifest", help="Dataset manifest CSV."),
    config: Optional[str] = typer.Option(None, "--config", help="Pipeline config TOML."),
    report: Optional[str] = typer.Option(
        None,
        "--report",
        help="CSV report path; a JSON report is written alongside.",
    ),
    tr: Optional[bool] = typer.Option(
        None,
        "--tr/--no-tr",
        help="Override TR normalization from the config.",
    ),
    wpca: Optional[int] = typer.Option(
        None,
        "--wpca",
        help="Override the WPCA dimension (0 disables).",
    ),
    workers: Optional[int] = typer.Option(None, "--workers", help="Worker threads."),
    verbose_opt: bool = VerboseOpt,
    quiet_opt: bool = QuietOpt,
    ctx: typer.Context = typer.Context,
) -> None:
    """Run a closed-set rank-1 identification protocol."""
    _verbose, quiet = _resolve_options(ctx, verbose_opt, quiet_opt)

    from dctnet.api import evaluate_protocol

    bus = _make_cli_bus() if not quiet else None
    result = asyncio.run(
        evaluate_protocol(
            manifest,
            config=config,
            report=report,
            tr_norm=tr,
            wpca_dim=wpca,
            workers=workers,
            event_bus=bus,
        )
    )
    _finish(result, quiet, ctx)


@app.command("verify-klt")
def verify_klt(
    r: float = typer.Option(..., "--r", help="Adjacent-pixel correlation, 0 < r < 1."),
    n: int = typer.Option(..., "--n", help="Vector length N."),
    csv: Optional[str] = typer.Option(None, "--csv", help="Per-index CSV to write."),
    report: Optional[str] = typer.Option(None, "--report", help="Text report to write."),
    threshold: float = typer.Option(
        0.999,
        "--threshold",
        help="Minimum |cos| required for success.",
    ),
    verbose_opt: bool = VerboseOpt,
    quiet_opt: bool = QuietOpt,
    ctx: typer.Context = typer.Context,
) -> None:
    """Compare the Markov-model KLT with the DCT basis."""
    _verbose, quiet = _resolve_options(ctx, verbose_opt, quiet_opt)

    from dctnet.api import verify_klt as verify_klt_api

    bus = _make_cli_bus() if not quiet else None
    result = asyncio.run(
        verify_klt_api(r, n, csv=csv, report=report, threshold=threshold, event_bus=bus)
    )
    _finish(result, quiet, ctx)


@app.command()
def inspect(
    path: str = typer.Argument(..., help="Filter-bank or feature-store file."),
    verbose_opt: bool = VerboseOpt,
    quiet_opt: bool = QuietOpt,
    ctx: typer.Context = typer.Context,
) -> None:
    """Dump the header of a filter-bank or feature-store file."""
    _verbose, quiet = _resolve_options(ctx, verbose_opt, quiet_opt)

    from dctnet.api import inspect_file

    result = asyncio.run(inspect_file(path))
    _finish(result, quiet, ctx)


@app.command("make-synthetic")
def make_synthetic(
    out_dir: str = typer.Argument(..., help="Directory for images and manifest.csv."),
    subjects: int = typer.Option(20, "--subjects", help="Number of subjects."),
    size: int = typer.Option(64, "--size", help="Square image size."),
    probes: int = typer.Option(1, "--probes", help="Probes per subject."),
    noise: float = typer.Option(10.0, "--noise", help="Probe noise sigma (0-255 scale)."),
    max_shift: int = typer.Option(2, "--max-shift", help="Maximum probe shift in pixels."),
    seed: int = typer.Option(0, "--seed", help="Random seed."),
    verbose_opt: bool = VerboseOpt,
    quiet_opt: bool = QuietOpt,
    ctx: typer.Context = typer.Context,
) -> None:
    """Generate a seeded synthetic gallery/probe dataset."""
    _verbose, quiet = _resolve_options(ctx, verbose_opt, quiet_opt)

    from dctnet.api import make_synthetic as make_synthetic_api

    bus = _make_cli_bus() if not quiet else None
    result = asyncio.run(
        make_synthetic_api(
            out_dir,
            subjects=subjects,
            size=size,
            probes_per_subject=probes,
            noise_sigma=noise,
            max_shift=max_shift,
            seed=seed,
            event_bus=bus,
        )
    )
    _finish(result, quiet, ctx)
