"""Tests for the public library API (api.py).

Verifies that the async functions wrap their workflow counterparts, accept
event_bus, and emit the correct events on success/failure.

Patch targets use source module paths because api.py uses lazy imports
inside function bodies.
"""

import inspect
from unittest.mock import AsyncMock, patch

import pytest

from dctnet.events.bus import EventBus
from dctnet.events.types import Event, EventType
from dctnet.output.schema import CommandResult

# Patch targets at source modules (lazy imports in api.py function bodies)
_FILTERS_WF = "dctnet.commands.filters.filters_workflow"
_LEARN_PCA_WF = "dctnet.commands.learn_pca.learn_pca_workflow"
_EXTRACT_WF = "dctnet.commands.extract.extract_workflow"
_EVALUATE_WF = "dctnet.commands.evaluate.evaluate_workflow"
_VERIFY_KLT_WF = "dctnet.commands.verify_klt.verify_klt_workflow"
_INSPECT_WF = "dctnet.commands.inspect_file.inspect_workflow"


# ── Helpers ──────────────────────────────────────────────────────


def _ok_result(result: object = None) -> CommandResult:
    return CommandResult.ok(result=result if result is not None else {"status": "ok"}, duration_ms=1)


def _err_result(msg: str = "something broke") -> CommandResult:
    return CommandResult.error(msg)


def _capture(bus: EventBus, event_type: EventType) -> list[Event]:
    captured: list[Event] = []
    bus.on(event_type, captured.append)
    return captured


# ── build_filters ────────────────────────────────────────────────


class TestBuildFilters:
    def test_is_async_function(self) -> None:
        from dctnet.api import build_filters

        assert inspect.iscoroutinefunction(build_filters)

    @pytest.mark.anyio
    async def test_emits_bank_ready(self) -> None:
        from dctnet.api import build_filters

        bus = EventBus()
        captured = _capture(bus, EventType.BANK_READY)
        with patch(_FILTERS_WF, return_value=_ok_result()) as mock_wf:
            result = await build_filters(k=3, count=2, out="b.dctb", event_bus=bus)
        mock_wf.assert_called_once()
        assert mock_wf.call_args.kwargs["count"] == 2
        assert result.success is True
        assert captured[0].data == {"command": "filters", "source": "dct", "bank_file": "b.dctb"}

    @pytest.mark.anyio
    async def test_real_workflow_without_bus(self) -> None:
        from dctnet.api import build_filters

        result = await build_filters(k=3, count=2, layers=1)
        assert result.success is True
        assert result.result["layers"][0]["count"] == 2


# ── learn_pca ────────────────────────────────────────────────────


class TestLearnPca:
    @pytest.mark.anyio
    async def test_emits_error_on_failure(self) -> None:
        from dctnet.api import learn_pca

        bus = EventBus()
        errors = _capture(bus, EventType.ERROR)
        ready = _capture(bus, EventType.BANK_READY)
        with patch(_LEARN_PCA_WF, new_callable=AsyncMock, return_value=_err_result()):
            result = await learn_pca("m.csv", "o.dctb", event_bus=bus)
        assert result.success is False
        assert ready == []
        assert errors[0].data == {"command": "learn-pca", "errors": ["something broke"]}


# ── extract_features ─────────────────────────────────────────────


class TestExtractFeatures:
    @pytest.mark.anyio
    async def test_emits_features_extracted(self) -> None:
        from dctnet.api import extract_features

        bus = EventBus()
        captured = _capture(bus, EventType.FEATURES_EXTRACTED)
        with patch(_EXTRACT_WF, new_callable=AsyncMock, return_value=_ok_result({"count": 40})) as mock_wf:
            await extract_features("m.csv", "f.dctf", config="c.toml", event_bus=bus)
        mock_wf.assert_awaited_once()
        assert mock_wf.call_args.kwargs["config"] == "c.toml"
        assert captured[0].data["count"] == 40

    @pytest.mark.anyio
    async def test_progress_becomes_events(self) -> None:
        from dctnet.api import extract_features

        bus = EventBus()
        progress = _capture(bus, EventType.PROGRESS_UPDATE)

        async def fake_workflow(**kwargs):
            kwargs["on_progress"](1, 2)
            kwargs["on_progress"](2, 2)
            return _ok_result()

        with patch(_EXTRACT_WF, new=fake_workflow):
            await extract_features("m.csv", "f.dctf", event_bus=bus)
        assert [e.data["done"] for e in progress] == [1, 2]
        assert progress[0].data["command"] == "extract"


# ── evaluate_protocol ────────────────────────────────────────────


class TestEvaluateProtocol:
    @pytest.mark.anyio
    async def test_emits_average(self) -> None:
        from dctnet.api import evaluate_protocol

        bus = EventBus()
        captured = _capture(bus, EventType.EVALUATION_COMPLETE)
        with patch(_EVALUATE_WF, new_callable=AsyncMock, return_value=_ok_result({"average": 97.5})) as mock_wf:
            await evaluate_protocol("m.csv", tr_norm=False, wpca_dim=0, event_bus=bus)
        assert mock_wf.call_args.kwargs["tr_norm"] is False
        assert mock_wf.call_args.kwargs["wpca_dim"] == 0
        assert captured[0].data["average"] == 97.5


# ── verify_klt / inspect_file ────────────────────────────────────


class TestVerifyKlt:
    @pytest.mark.anyio
    async def test_passes_arguments(self) -> None:
        from dctnet.api import verify_klt

        with patch(_VERIFY_KLT_WF, return_value=_ok_result()) as mock_wf:
            await verify_klt(0.99, 16, threshold=0.9)
        assert mock_wf.call_args.kwargs == {"r": 0.99, "n": 16, "csv": None, "report": None, "threshold": 0.9}

    @pytest.mark.anyio
    async def test_real_check(self) -> None:
        from dctnet.api import verify_klt

        result = await verify_klt(0.999, 8)
        assert result.success is True


class TestInspectFile:
    @pytest.mark.anyio
    async def test_error_event(self) -> None:
        from dctnet.api import inspect_file

        bus = EventBus()
        errors = _capture(bus, EventType.ERROR)
        with patch(_INSPECT_WF, return_value=_err_result("bad magic")):
            await inspect_file("x.bin", event_bus=bus)
        assert errors[0].data["errors"] == ["bad magic"]


# ── Package exports ──────────────────────────────────────────────


class TestLazyExports:
    def test_api_names(self) -> None:
        import dctnet

        assert dctnet.verify_klt is not None
        assert dctnet.EventBus is EventBus

    def test_unknown_name(self) -> None:
        import dctnet

        with pytest.raises(AttributeError):
            _ = dctnet.not_a_thing
