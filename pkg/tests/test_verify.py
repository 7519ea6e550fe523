"""Tests for the self-verification suites."""

import pytest

from src.app import runner as runner_module
from src.app.runner import CorrelationRunner
from src.app.schemas import RunConfig, SuiteResult
from src.app.verify import VerificationSuites

QUICK = VerificationSuites(fef_grid=13, discord_grid=(37, 25))


@pytest.mark.parametrize(
    "suite",
    [
        "channel",
        "family",
        "fef_anchors",
        "fstar_equality",
        "esd",
        "concurrence_window",
        "ordering_reversal",
        "phi_invariance",
        "lambdas_spectrum",
        "discord_zero",
        "figures",
    ],
)
def test_suite_passes(suite: str) -> None:
    """Test each inexpensive suite passes on the default thresholds."""
    result = getattr(QUICK, suite)()
    assert result.status == "success", result.message
    assert result.max_discrepancy <= result.threshold
    assert result.failing_point is None


def test_injected_sign_fault_is_caught() -> None:
    """Test the negative control fails the FEF anchor suite."""
    result = VerificationSuites(fault="fef-sign").fef_anchors()
    assert result.status == "error"
    assert result.error_code == "VERIFICATION_FAILED"
    assert result.failing_point == (0.0, 0.5, 0.0)
    assert result.max_discrepancy == pytest.approx(0.5)


def test_tolerance_override_forces_failure() -> None:
    """Test a threshold below round-off makes the optimizer suite fail."""
    result = VerificationSuites(tol=1e-15).optimal_weight()
    assert result.status == "error"
    assert result.threshold == 1e-15
    assert result.failing_point is not None


def _fake(status: str) -> list[SuiteResult]:
    return [
        SuiteResult(name="channel", status="success", max_discrepancy=1e-16, threshold=1e-12),
        SuiteResult(
            name="fef-anchors",
            status=status,  # type: ignore[arg-type]
            max_discrepancy=0.5,
            threshold=1e-10,
            message="discrepancy above threshold",
            failing_point=(0.0, 0.5, 0.0) if status == "error" else None,
        ),
    ]


def test_run_verify_report_lines(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test the verify payload lists one line per suite and a verdict."""
    monkeypatch.setattr(runner_module, "run_verification", lambda *args: _fake("error"))
    output = CorrelationRunner(fef_grid=13, discord_grid=(37, 25)).execute(
        RunConfig(command="verify")
    )
    assert not output.ok
    lines = output.text.splitlines()
    assert "PASS channel max_discrepancy=1e-16 threshold=1e-12" in lines
    assert any(line.startswith("FAIL fef-anchors") and "at=(0,0.5,0)" in line for line in lines)
    assert lines[-1] == "# result: fail 1/2"


def test_run_verify_json_omits_timings(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test the JSON payload has no usage block."""
    monkeypatch.setattr(runner_module, "run_verification", lambda *args: _fake("success"))
    output = CorrelationRunner(fef_grid=13, discord_grid=(37, 25)).execute(
        RunConfig(command="verify", format="json")
    )
    assert output.ok
    assert "usage" not in output.text
    assert "duration_ms" not in output.text


def test_runner_reads_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test grid sizes and workers come from the environment by default."""
    monkeypatch.setenv("QCORR_FEF_GRID", "21")
    monkeypatch.setenv("QCORR_DISCORD_GRID", "91x61")
    monkeypatch.setenv("QCORR_WORKERS", "3")
    runner = CorrelationRunner()
    assert runner.fef_grid == 21
    assert runner.discord_grid == (91, 61)
    assert runner.workers == 3
    monkeypatch.setenv("QCORR_DISCORD_GRID", "91-61")
    with pytest.raises(ValueError):
        CorrelationRunner()
