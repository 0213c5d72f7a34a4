"""
tests/test_tools.py
===================
Tests for the tools, the registry, the action log, the command coordinator
and the CLI entry point.

Test Coverage:
- Error folding and exit codes in BaseTool
- Artifact writers
- Every command end to end through the coordinator
- Validation failures, domain errors and CSV input
- Byte-identical artifacts across runs
"""

import json

import pandas as pd
import pytest
from pydantic import ValidationError

from commands.coordinator import CommandCoordinator, RunConfig, validation_message
from core.errors import ParameterError
from main import main
from solvers.ivp_solver import SolverConfig
from tools import (
    ActionLoggerTool,
    BaseTool,
    FracIntegralTool,
    SolveIVPTool,
    ToolExecutionError,
    ToolRegistry,
    ToolResult,
    VerifyIdentitiesTool,
    log_run_action,
)
from tools.report_generator import artifact_summary, to_serializable, write_json_report

UNIT = {"components": [{"interval": [0.0, 1.0]}]}
INTEGERS = {"components": [{"point": float(k)} for k in range(5)]}


def write_doc(path, document):
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


@pytest.fixture
def fracint_doc(tmp_path):
    return write_doc(tmp_path / "fracint.json", {
        "timescale": INTEGERS,
        "psi": {"name": "identity"},
        "function": {"name": "constant", "params": {"value": 1.0}},
        "alpha": 0.5,
        "t": 2.0,
    })


@pytest.fixture
def coordinator(tmp_path):
    return CommandCoordinator(str(tmp_path / "logs"))


def run_config(tmp_path, command, input_path=None, **kwargs):
    return RunConfig(command=command, input_path=input_path, output_dir=tmp_path / "out",
                     log_dir=tmp_path / "logs", **kwargs)


class _Failing(BaseTool):
    def __init__(self, exc):
        super().__init__("failing", "raises on purpose")
        self.exc = exc

    async def execute(self, **kwargs) -> ToolResult:
        raise self.exc


class TestBaseTool:
    """Tests for error folding in BaseTool.run."""

    @pytest.mark.asyncio
    async def test_library_error_keeps_exit_code(self):
        result = await _Failing(ParameterError("alpha must be positive")).run()
        assert not result.success
        assert result.exit_code == 2
        assert result.error.startswith("ParameterError")
        assert result.execution_time_ms is not None

    @pytest.mark.asyncio
    async def test_validation_error_is_input_error(self):
        with pytest.raises(ValidationError) as info:
            RunConfig(command="verify", grid_N=0)
        result = await _Failing(info.value).run()
        assert result.exit_code == 2
        assert result.error.startswith("validation failed: grid_N:")

    @pytest.mark.asyncio
    async def test_dict_document_is_validated(self, tmp_path):
        document = {"timescale": UNIT, "alpha": 1.5, "rhs": {"name": "constant"}}
        result = await SolveIVPTool().run(document=document, solver_config=SolverConfig(grid_N=4),
                                          output_dir=str(tmp_path / "out"))
        assert not result.success
        assert result.exit_code == 2
        assert "alpha" in result.error

    @pytest.mark.asyncio
    async def test_unexpected_error_is_internal(self):
        with pytest.raises(ToolExecutionError):
            await _Failing(KeyError("missing")).run()

    def test_registry(self):
        registry = ToolRegistry()
        registry.register(FracIntegralTool())
        registry.register(VerifyIdentitiesTool())
        assert registry.list_tool_names() == ["fractional_integral", "verify_identities"]
        assert registry.get_tool("nothing") is None


class TestActionLogger:
    """Tests for the JSONL run log."""

    def test_appends_entries(self, tmp_path):
        log_dir = str(tmp_path / "logs")
        log_run_action("Coordinator", "start_command", {"command": "verify"}, log_dir=log_dir)
        outcome = log_run_action("Coordinator", "finish_command", {"exit_code": 0}, log_dir=log_dir)
        with open(outcome["log_file"], encoding="utf-8") as f:
            entries = [json.loads(line) for line in f]
        assert [e["action"] for e in entries] == ["start_command", "finish_command"]
        assert entries[1]["details"] == {"exit_code": 0}

    @pytest.mark.asyncio
    async def test_tool_wrapper(self, tmp_path):
        tool = ActionLoggerTool(str(tmp_path / "logs"))
        result = await tool.execute(component="Solver", action="diverged", details={"nan": float("nan")},
                                    level="WARNING")
        assert result.success
        with open(result.data["log_file"], encoding="utf-8") as f:
            entry = json.loads(f.readline())
        assert entry["level"] == "WARNING"
        assert entry["details"] == {"nan": None}


class TestReportGenerator:
    """Tests for the artifact writers."""

    def test_non_finite_becomes_null(self):
        assert to_serializable({"a": float("inf"), "b": [1.5, float("nan")]}) == {"a": None, "b": [1.5, None]}

    def test_float_format_rounds(self):
        assert to_serializable(1.0 / 3.0, "%.3g") == 0.333

    def test_json_is_sorted(self, tmp_path):
        path = write_json_report({"b": 1, "a": 2}, str(tmp_path / "r.json"))
        text = open(path, encoding="utf-8").read()
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("\n")

    def test_artifact_summary(self):
        assert artifact_summary({"report": "out/r.json", "csv": "out/v.csv"}) == "csv: out/v.csv\nreport: out/r.json"


class TestRunConfig:
    """Tests for CLI settings validation."""

    def test_input_required(self, tmp_path):
        with pytest.raises(ValidationError):
            run_config(tmp_path, "fracint")

    def test_input_must_exist(self, tmp_path):
        with pytest.raises(ValidationError):
            run_config(tmp_path, "fracint", tmp_path / "missing.json")

    def test_verify_needs_no_input(self, tmp_path):
        assert run_config(tmp_path, "verify").input_path is None

    def test_unknown_setting(self, tmp_path):
        with pytest.raises(ValidationError):
            RunConfig(command="verify", grid_size=12)

    def test_validation_message_names_field(self, tmp_path):
        with pytest.raises(ValidationError) as info:
            RunConfig(command="verify", grid_N=0)
        assert validation_message(info.value).startswith("validation failed: grid_N:")


class TestCoordinator:
    """End-to-end command runs and their exit codes."""

    @pytest.mark.asyncio
    async def test_fracint_on_integers(self, tmp_path, coordinator, fracint_doc):
        code = await coordinator.run(run_config(tmp_path, "fracint", fracint_doc))
        assert code == 0
        frame = pd.read_csv(tmp_path / "out" / "fracint.csv")
        assert list(frame.columns) == ["t", "value"]
        assert frame.loc[frame["t"] == 2.0, "value"].iloc[0] == pytest.approx(0.96313, abs=1e-5)
        report = json.loads((tmp_path / "out" / "fracint.json").read_text(encoding="utf-8"))
        assert report["value_at_t"] == pytest.approx(0.96313, abs=1e-5)
        assert report["non_finite_nodes"] == []

    @pytest.mark.asyncio
    async def test_unknown_document_key(self, tmp_path, coordinator):
        path = write_doc(tmp_path / "bad.json", {"timescale": UNIT, "function": {"name": "constant"},
                                                 "alpha": 0.5, "order": 2})
        code = await coordinator.run(run_config(tmp_path, "fracint", path))
        assert code == 2
        assert "order" in coordinator.last_result.error

    @pytest.mark.asyncio
    async def test_non_positive_alpha(self, tmp_path, coordinator, fracint_doc):
        code = await coordinator.run(run_config(tmp_path, "fracint", fracint_doc, alpha=-0.5))
        assert code == 2
        assert "alpha" in coordinator.last_result.error

    @pytest.mark.asyncio
    async def test_off_scale_t(self, tmp_path, coordinator, fracint_doc):
        code = await coordinator.run(run_config(tmp_path, "fracint", fracint_doc, t=2.5))
        assert code == 2
        assert coordinator.last_result.error.startswith("DomainError")

    @pytest.mark.asyncio
    async def test_function_csv_relative_to_input(self, tmp_path, coordinator):
        pd.DataFrame({"t": [0.0, 1.0, 2.0, 3.0, 4.0], "value": [1.0] * 5}).to_csv(tmp_path / "f.csv", index=False)
        path = write_doc(tmp_path / "csv_input.json", {"timescale": INTEGERS, "function_csv": "f.csv",
                                                       "alpha": 0.5, "t": 2.0})
        code = await coordinator.run(run_config(tmp_path, "fracint", path))
        assert code == 0
        assert coordinator.last_result.data["value_at_t"] == pytest.approx(0.96313, abs=1e-5)

    @pytest.mark.asyncio
    async def test_misaligned_csv(self, tmp_path, coordinator):
        pd.DataFrame({"t": [0.0, 1.0, 2.5, 3.0, 4.0], "value": [1.0] * 5}).to_csv(tmp_path / "f.csv", index=False)
        path = write_doc(tmp_path / "csv_input.json", {"timescale": INTEGERS, "function_csv": "f.csv", "alpha": 0.5})
        code = await coordinator.run(run_config(tmp_path, "fracint", path))
        assert code == 2
        assert "row 3" in coordinator.last_result.error

    @pytest.mark.asyncio
    async def test_fracderiv_with_psi_override(self, tmp_path, coordinator):
        path = write_doc(tmp_path / "deriv.json", {
            "timescale": UNIT,
            "function": {"name": "psi_power", "params": {"exponent": 2.0}},
            "alpha": 0.5, "beta": 0.5, "t": 1.0,
        })
        code = await coordinator.run(run_config(tmp_path, "fracderiv", path, psi="power:exponent=2", grid_N=256))
        assert code == 0
        report = json.loads((tmp_path / "out" / "fracderiv.json").read_text(encoding="utf-8"))
        assert report["psi"] == {"name": "power", "params": {"exponent": 2.0}}
        assert report["gamma"] == pytest.approx(0.75)
        assert report["value_at_t"] == pytest.approx(1.5045, rel=2e-2)

    @pytest.mark.asyncio
    async def test_describe_timescale(self, tmp_path, coordinator):
        path = write_doc(tmp_path / "ts.json", {"components": [{"point": 0.0}, {"interval": [1.0, 2.0]}]})
        code = await coordinator.run(run_config(tmp_path, "describe-timescale", path, grid_N=4))
        assert code == 0
        nodes = pd.read_csv(tmp_path / "out" / "nodes.csv")
        assert nodes["t"].tolist() == [0.0, 1.0, 1.25, 1.5, 1.75, 2.0]
        summary = json.loads((tmp_path / "out" / "timescale.json").read_text(encoding="utf-8"))
        assert summary["node_count"] == 6

    @pytest.mark.asyncio
    async def test_solve_ivp(self, tmp_path, coordinator):
        path = write_doc(tmp_path / "ivp.json", {
            "timescale": UNIT, "alpha": 0.5, "beta": 1.0,
            "rhs": {"name": "constant", "params": {"value": 1.0}}, "L": 0.0, "M": 1.0,
        })
        code = await coordinator.run(run_config(tmp_path, "solve-ivp", path, grid_N=32))
        assert code == 0
        report = json.loads((tmp_path / "out" / "report.json").read_text(encoding="utf-8"))
        assert report["converged"] is True
        assert report["terminal_value"] == pytest.approx(1.1284, abs=1e-4)
        solution = pd.read_csv(tmp_path / "out" / "solution.csv")
        assert len(solution) == 33

    @pytest.mark.asyncio
    async def test_synthesize_control(self, tmp_path, coordinator):
        path = write_doc(tmp_path / "control.json", {
            "timescale": UNIT, "alpha": 1.0, "beta": 0.0,
            "rhs": {"name": "constant", "params": {"value": 0.0}},
            "b_gain": 1.0, "y1": 1.0, "M_W": 1.0,
        })
        code = await coordinator.run(run_config(tmp_path, "synthesize-control", path, grid_N=32))
        assert code == 0
        report = json.loads((tmp_path / "out" / "control_report.json").read_text(encoding="utf-8"))
        assert report["terminal_error"] <= 1e-8
        assert report["controllability"]["holds"] is True

    @pytest.mark.asyncio
    async def test_zero_gain_is_numerical_failure(self, tmp_path, coordinator):
        path = write_doc(tmp_path / "control.json", {
            "timescale": UNIT, "alpha": 0.5, "rhs": {"name": "constant"}, "b_gain": 0.0, "y1": 1.0,
        })
        code = await coordinator.run(run_config(tmp_path, "synthesize-control", path, grid_N=8))
        assert code == 3
        assert coordinator.last_result.error.startswith("NonInvertibleError")

    @pytest.mark.asyncio
    async def test_verify(self, tmp_path, coordinator):
        code = await coordinator.run(run_config(tmp_path, "verify", seed=0))
        assert code == 0
        summary = (tmp_path / "out" / "verify_summary.txt").read_text(encoding="utf-8")
        assert summary.rstrip().endswith("18 identities, 0 mismatches")

    @pytest.mark.asyncio
    async def test_actions_are_logged(self, tmp_path, coordinator, fracint_doc):
        await coordinator.run(run_config(tmp_path, "fracint", fracint_doc))
        lines = (tmp_path / "logs" / "run_actions.log").read_text(encoding="utf-8").splitlines()
        actions = [json.loads(line)["action"] for line in lines]
        assert actions == ["start_command", "finish_command"]

    @pytest.mark.asyncio
    async def test_artifacts_are_byte_identical(self, tmp_path, fracint_doc):
        outputs = []
        for name in ("first", "second"):
            config = RunConfig(command="fracint", input_path=fracint_doc, output_dir=tmp_path / name,
                               log_dir=tmp_path / "logs")
            assert await CommandCoordinator(str(tmp_path / "logs")).run(config) == 0
            outputs.append([(tmp_path / name / f).read_bytes() for f in ("fracint.csv", "fracint.json")])
        assert outputs[0] == outputs[1]


    @pytest.mark.asyncio
    async def test_validation_inside_tool_is_exit_two(self, tmp_path, coordinator, fracint_doc):
        with pytest.raises(ValidationError) as info:
            RunConfig(command="verify", grid_N=0)
        failing = _Failing(info.value)
        failing.name = "fractional_integral"
        coordinator.registry.register(failing)
        code = await coordinator.run(run_config(tmp_path, "fracint", fracint_doc))
        assert code == 2
        assert coordinator.last_result.error.startswith("validation failed")

    @pytest.mark.asyncio
    async def test_unregistered_command_is_internal(self, tmp_path, coordinator):
        del coordinator.registry.tools["verify_identities"]
        code = await coordinator.run(run_config(tmp_path, "verify"))
        assert code == 1
        assert "verify" in coordinator.last_result.error

class TestMain:
    """Tests for the CLI entry point."""

    @pytest.mark.asyncio
    async def test_fracint(self, tmp_path, monkeypatch, capsys, fracint_doc):
        monkeypatch.chdir(tmp_path)
        monkeypatch.delenv("FRACTS_CONFIG", raising=False)
        code = await main(["fracint", "--input", str(fracint_doc), "--out", "cli_out"])
        assert code == 0
        assert "fracint: cli_out" in capsys.readouterr().out
        assert (tmp_path / "cli_out" / "fracint.csv").exists()

    @pytest.mark.asyncio
    async def test_bad_flag_value(self, tmp_path, monkeypatch, capsys, fracint_doc):
        monkeypatch.chdir(tmp_path)
        monkeypatch.delenv("FRACTS_CONFIG", raising=False)
        code = await main(["fracint", "--input", str(fracint_doc), "--grid-N", "0"])
        assert code == 2
        assert "grid_N" in capsys.readouterr().err

    @pytest.mark.asyncio
    async def test_missing_settings_file(self, tmp_path, monkeypatch, fracint_doc):
        monkeypatch.chdir(tmp_path)
        code = await main(["fracint", "--input", str(fracint_doc), "--config", "nowhere.json"])
        assert code == 2

    @pytest.mark.asyncio
    async def test_ivp_order_out_of_range(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        monkeypatch.delenv("FRACTS_CONFIG", raising=False)
        path = write_doc(tmp_path / "ivp.json", {"timescale": UNIT, "alpha": 1.5, "rhs": {"name": "constant"}})
        code = await main(["solve-ivp", "--input", str(path), "--grid-N", "4"])
        assert code == 2
