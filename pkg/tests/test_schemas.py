"""Tests for shared schemas."""

import math

import pytest
from pydantic import ValidationError

from src.app.schemas import (
    FIG1_D_LIST,
    FIG2_D_LIST,
    CorrelationReport,
    Measure,
    RunConfig,
    SuiteResult,
    SuiteUsage,
)
from src.physics.measures import TheoremBranch


def _report(**overrides: object) -> CorrelationReport:
    fields: dict[str, object] = {
        "d": 0.5,
        "u": 0.5,
        "phi": 0.0,
        "c_closed": 0.25,
        "c_wootters": 0.25 + 1e-12,
        "n": 0.25,
        "f_closed": 0.625,
        "f_horodecki": 0.625,
        "fstar_upper": 0.625,
        "d_xstate": 0.2,
        "esd": False,
        "theorem_branch": TheoremBranch.SIGMA_X,
        "fstar_exact": True,
    }
    fields.update(overrides)
    return CorrelationReport(**fields)  # type: ignore[arg-type]


def test_correlation_report_deltas() -> None:
    """Test computed discrepancies, including missing oracles."""
    report = _report(f_brute=0.6249999, d_brute=0.2000002)
    assert report.delta_concurrence == pytest.approx(1e-12, abs=1e-15)
    assert report.delta_fef_brute == pytest.approx(1e-7)
    assert report.delta_discord == pytest.approx(2e-7)
    assert _report().delta_fef_brute is None


def test_correlation_report_model_dump() -> None:
    """Test computed fields appear when dumping."""
    dumped = _report().model_dump(mode="json")
    assert dumped["theorem_branch"] == "sigma_x"
    assert "delta_concurrence" in dumped
    assert dumped["f_brute"] is None


def test_run_config_point_requires_d_and_u() -> None:
    """Test point without u is refused."""
    with pytest.raises(ValidationError):
        RunConfig(command="point", d=0.5)
    cfg = RunConfig(command="point", d=0.5, u=0.5)
    assert cfg.format == "csv"
    assert cfg.grid_refine


def test_run_config_bounds() -> None:
    """Test field bounds on d, u, phi and tol."""
    with pytest.raises(ValidationError):
        RunConfig(command="point", d=1.5, u=0.5)
    with pytest.raises(ValidationError):
        RunConfig(command="point", d=0.5, u=0.5, phi=2.0 * math.pi)
    with pytest.raises(ValidationError):
        RunConfig(command="verify", tol=0.0)
    with pytest.raises(ValidationError):
        RunConfig(command="verify", format="xml")
    with pytest.raises(ValidationError):
        RunConfig(command="verify", inject_fault="other")


def test_run_config_d_list() -> None:
    """Test d list validation and defaults."""
    with pytest.raises(ValidationError):
        RunConfig(command="sweep", d_list=[])
    with pytest.raises(ValidationError):
        RunConfig(command="sweep", d_list=[0.2, 1.4])
    assert RunConfig(command="sweep").d_values(FIG1_D_LIST) == FIG1_D_LIST
    assert RunConfig(command="sweep", d=0.3).d_values(FIG1_D_LIST) == [0.3]
    assert RunConfig(command="sweep", d_list=[0.1]).d_values(FIG1_D_LIST) == [0.1]


def test_run_config_optimize_needs_interior_d() -> None:
    """Test optimize refuses the endpoints of the damping range."""
    with pytest.raises(ValidationError):
        RunConfig(command="optimize", d_list=[0.0, 0.5])
    cfg = RunConfig(command="optimize", d=0.5, measure=Measure.FEF)
    assert cfg.measure is Measure.FEF


def test_run_config_u_range_order() -> None:
    """Test u_start may not exceed u_stop."""
    with pytest.raises(ValidationError):
        RunConfig(command="sweep", u_start=0.8, u_stop=0.2)


def test_run_config_parameters_skip_output_fields() -> None:
    """Test metadata parameters omit unset and output-only fields."""
    params = RunConfig(command="point", d=0.5, u=0.25, format="json").parameters()
    assert params["d"] == 0.5
    assert params["u"] == 0.25
    assert "format" not in params
    assert "command" not in params
    assert "tol" not in params


def test_run_config_parameters_follow_command() -> None:
    """Test metadata lists the resolved inputs each command consumes."""
    figure = RunConfig(command="figure2").parameters()
    assert figure == {"d_list": FIG2_D_LIST, "u_step": 0.005}
    sweep = RunConfig(command="sweep", d=0.3).parameters()
    assert sweep["d_list"] == [0.3]
    assert sweep["u_step"] == 0.05
    assert "d" not in sweep
    assert RunConfig(command="verify").parameters() == {}
    optimize = RunConfig(command="optimize", measure="fef").parameters()
    assert optimize == {"d_list": FIG1_D_LIST, "measure": "fef"}


def test_suite_result() -> None:
    """Test a failing suite result carries its point and code."""
    usage = SuiteUsage(duration_ms=12.5, evaluations=3)
    result = SuiteResult(
        name="fef-anchors",
        status="error",
        max_discrepancy=0.5,
        threshold=1e-10,
        message="discrepancy above threshold",
        failing_point=(0.0, 0.5, 0.0),
        error_code="VERIFICATION_FAILED",
        usage=usage,
    )
    assert result.failing_point == (0.0, 0.5, 0.0)
    assert result.usage is not None
    assert result.usage.timestamp is not None
    dumped = result.model_dump(exclude={"usage"}, exclude_none=True)
    assert "usage" not in dumped
    assert dumped["error_code"] == "VERIFICATION_FAILED"
