"""Tests for CLI argument parsing, option placement and exit codes.

Most tests mock workflow functions at their source modules because cli.py
and api.py import lazily inside command bodies.
"""

import json
from pathlib import Path
from unittest.mock import AsyncMock, patch

from typer.testing import CliRunner

from dctnet.cli import app
from dctnet.output.schema import CommandResult

runner = CliRunner()

_FILTERS_WF = "dctnet.commands.filters.filters_workflow"
_LEARN_PCA_WF = "dctnet.commands.learn_pca.learn_pca_workflow"
_EVALUATE_WF = "dctnet.commands.evaluate.evaluate_workflow"
_VERIFY_KLT_WF = "dctnet.commands.verify_klt.verify_klt_workflow"
_INSPECT_WF = "dctnet.commands.inspect_file.inspect_workflow"


# ── Helpers ──────────────────────────────────────────────────────


def _ok_result() -> CommandResult:
    return CommandResult.ok(result={"status": "ok"}, duration_ms=1)


def _json_body(output: str) -> dict:
    """Parse the CommandResult JSON, ignoring interleaved event lines."""
    lines = [line for line in output.splitlines() if not line.startswith("event: ")]
    return json.loads("\n".join(lines))


# ── Global options ───────────────────────────────────────────────


class TestGlobalOptions:
    def test_version(self) -> None:
        result = runner.invoke(app, ["--version"])
        assert result.exit_code == 0
        assert result.output.startswith("dctnet ")

    def test_help_lists_commands(self) -> None:
        result = runner.invoke(app, ["--help"])
        assert result.exit_code == 0
        for name in ("filters", "learn-pca", "extract", "evaluate", "verify-klt", "inspect", "make-synthetic"):
            assert name in result.output

    def test_global_quiet_suppresses_output(self) -> None:
        with patch(_VERIFY_KLT_WF, return_value=_ok_result()):
            result = runner.invoke(app, ["-q", "verify-klt", "--r", "0.9", "--n", "8"])
        assert result.exit_code == 0
        assert result.output.strip() == ""

    def test_text_output_format(self) -> None:
        with patch(_INSPECT_WF, return_value=_ok_result()):
            result = runner.invoke(app, ["--output-format", "text", "inspect", "x.dctb"])
        assert result.exit_code == 0
        assert "Status: SUCCESS" in result.output


# ── Exit codes ───────────────────────────────────────────────────


class TestExitCodes:
    def test_failure_exits_one(self) -> None:
        with patch(_VERIFY_KLT_WF, return_value=CommandResult.error("below the threshold")):
            result = runner.invoke(app, ["verify-klt", "--r", "0.5", "--n", "8", "--quiet"])
        assert result.exit_code == 1

    def test_success_json_envelope(self) -> None:
        with patch(_INSPECT_WF, return_value=_ok_result()):
            result = runner.invoke(app, ["inspect", "x.dctb"])
        assert result.exit_code == 0
        assert _json_body(result.output)["success"] is True

    def test_missing_required_option(self) -> None:
        result = runner.invoke(app, ["verify-klt", "--r", "0.9"])
        assert result.exit_code != 0


# ── Option forwarding ────────────────────────────────────────────


class TestOptionForwarding:
    def test_filters_p_maps_to_count(self) -> None:
        with patch(_FILTERS_WF, return_value=_ok_result()) as mock_wf:
            result = runner.invoke(app, ["filters", "--k", "3", "--p", "4", "--flip-axis", "--quiet"])
        assert result.exit_code == 0, result.output
        kwargs = mock_wf.call_args.kwargs
        assert kwargs["k"] == 3
        assert kwargs["count"] == 4
        assert kwargs["flip_axis"] is True

    def test_learn_pca_repeated_p(self) -> None:
        with patch(_LEARN_PCA_WF, new_callable=AsyncMock, return_value=_ok_result()) as mock_wf:
            result = runner.invoke(
                app,
                ["learn-pca", "--manifest", "m.csv", "--out", "o.dctb", "--p", "8", "--p", "4", "--quiet"],
            )
        assert result.exit_code == 0, result.output
        assert mock_wf.call_args.kwargs["per_layer"] == [8, 4]

    def test_learn_pca_render_options(self) -> None:
        with patch(_LEARN_PCA_WF, new_callable=AsyncMock, return_value=_ok_result()) as mock_wf:
            result = runner.invoke(
                app,
                ["learn-pca", "--manifest", "m.csv", "--out", "o.dctb", "--emit-pgm", "viz", "--upscale", "6", "--quiet"],
            )
        assert result.exit_code == 0, result.output
        assert mock_wf.call_args.kwargs["emit_pgm"] == "viz"
        assert mock_wf.call_args.kwargs["upscale"] == 6

    def test_evaluate_no_tr(self) -> None:
        with patch(_EVALUATE_WF, new_callable=AsyncMock, return_value=_ok_result()) as mock_wf:
            result = runner.invoke(app, ["evaluate", "--manifest", "m.csv", "--no-tr", "--wpca", "0", "--quiet"])
        assert result.exit_code == 0, result.output
        assert mock_wf.call_args.kwargs["tr_norm"] is False
        assert mock_wf.call_args.kwargs["wpca_dim"] == 0

    def test_evaluate_tr_defaults_to_config(self) -> None:
        with patch(_EVALUATE_WF, new_callable=AsyncMock, return_value=_ok_result()) as mock_wf:
            runner.invoke(app, ["evaluate", "--manifest", "m.csv", "--quiet"])
        assert mock_wf.call_args.kwargs["tr_norm"] is None


# ── Real runs ────────────────────────────────────────────────────


class TestRealCommands:
    def test_filters_writes_bank_and_pgms(self, tmp_path: Path) -> None:
        bank = tmp_path / "bank.dctb"
        result = runner.invoke(
            app,
            ["filters", "--k", "3", "--p", "2", "--layers", "1", "--out", str(bank), "--emit-pgm", str(tmp_path / "viz"), "--quiet"],
        )
        assert result.exit_code == 0, result.output
        assert bank.exists()
        assert len(list((tmp_path / "viz").glob("*.pgm"))) == 3

    def test_verify_klt_below_threshold(self) -> None:
        result = runner.invoke(app, ["verify-klt", "--r", "0.5", "--n", "8"])
        assert result.exit_code == 1
        body = _json_body(result.output)
        assert body["success"] is False
        assert body["result"]["min_cos"] < 0.999

    def test_learn_pca_renders_learned_banks(self, tiny_dataset: Path, tiny_config: Path, tmp_path: Path) -> None:
        bank = tmp_path / "pca.dctb"
        viz = tmp_path / "viz"
        result = runner.invoke(
            app,
            [
                "learn-pca",
                "--manifest", str(tiny_dataset),
                "--config", str(tiny_config),
                "--out", str(bank),
                "--k", "3",
                "--p", "4",
                "--p", "2",
                "--emit-pgm", str(viz),
                "--quiet",
            ],
        )
        assert result.exit_code == 0, result.output
        assert bank.exists()
        assert len(list(viz.glob("*.pgm"))) == 4 + 2 + 1
