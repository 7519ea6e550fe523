"""Shared schemas for reports, run configuration and verification results."""

from datetime import UTC, datetime
from enum import StrEnum
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field, computed_field, field_validator, model_validator

from src.physics.measures import TheoremBranch

Command = Literal["point", "sweep", "optimize", "figure1", "figure2", "verify"]

FIG1_D_LIST = [0.2, 0.4, 0.6, 0.8]
FIG2_D_LIST = [0.8, 0.6, 0.4, 0.2]
DEFAULT_U_STEP = 0.05
FIGURE_STEP = 0.005

# Fields each command reads, in metadata order; d_list and u_step are resolved.
_CONSUMED: dict[str, tuple[str, ...]] = {
    "point": ("d", "u", "phi", "oracles", "grid_refine"),
    "sweep": ("d_list", "u_start", "u_stop", "u_step", "phi", "oracles", "grid_refine"),
    "optimize": ("d_list", "measure", "tol"),
    "figure1": ("d_list", "u_step"),
    "figure2": ("d_list", "u_step"),
    "verify": ("tol", "inject_fault"),
}


class Measure(StrEnum):
    """Measures whose optimal input weight can be searched for."""

    CONCURRENCE = "concurrence"
    FEF = "fef"
    DISCORD = "discord"


def _gap(a: float | None, b: float | None) -> float | None:
    if a is None or b is None:
        return None
    return abs(a - b)


class CorrelationReport(BaseModel):
    """All measures of one damped cat state, closed form next to oracle."""

    d: float = Field(..., description="Damping strength on each qubit")
    u: float = Field(..., description="Weight of |00> in the input state")
    phi: float = Field(..., description="Relative phase of |11> in radians")
    c_closed: float = Field(..., description="Concurrence from the closed form")
    c_wootters: float = Field(..., description="Concurrence from the Wootters spectrum")
    n: float = Field(..., description="Negativity")
    f_closed: float = Field(..., description="Fully entangled fraction, closed form")
    f_horodecki: float = Field(..., description="FEF from correlation-matrix singular values")
    f_brute: float | None = Field(None, description="FEF from overlap maximization")
    fstar_upper: float = Field(..., description="Upper bound (1 + N)/2 on the maximum FEF")
    d_xstate: float = Field(..., description="Discord from the X-state formula (bits)")
    d_brute: float | None = Field(None, description="Discord from measurement search (bits)")
    esd: bool = Field(..., description="Inside the entanglement-sudden-death region")
    theorem_branch: TheoremBranch = Field(..., description="Optimal measurement branch used")
    fstar_exact: bool = Field(
        ..., description="sqrt(u/(1-u)) >= d, so fstar_upper equals the maximum FEF"
    )

    @computed_field  # type: ignore[prop-decorator]
    @property
    def delta_concurrence(self) -> float:
        return abs(self.c_closed - self.c_wootters)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def delta_fef_horodecki(self) -> float:
        return abs(self.f_closed - self.f_horodecki)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def delta_fef_brute(self) -> float | None:
        return _gap(self.f_closed, self.f_brute)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def delta_discord(self) -> float | None:
        return _gap(self.d_xstate, self.d_brute)


class ExtremumRecord(BaseModel):
    """Optimal input weight for one measure at one damping strength."""

    measure: Measure
    d: float
    u_star: float
    value: float
    u_m_analytic: float | None = Field(None, description="Closed-form optimum when one exists")


class AdvantageWindow(BaseModel):
    """Upper ends of the u intervals beating the maximally entangled input."""

    d: float
    concurrence_hi: float = Field(..., description="1/2 + d/(1+d^2)")
    concurrence_hi_numeric: float = Field(..., description="Bisection on C(d,u) - C(d,1/2)")
    discord_hi: float = Field(..., description="Bisection on D(d,u) - D(d,1/2)")


class EsdBoundary(BaseModel):
    """Input weight below which entanglement dies at strength d."""

    d: float
    u_boundary: float


class SweepTable(BaseModel):
    """Grid of reports plus located extrema and region boundaries."""

    phi: float
    reports: list[CorrelationReport]
    extrema: list[ExtremumRecord] = Field(default_factory=list)
    esd_boundary: list[EsdBoundary] = Field(default_factory=list)
    windows: list[AdvantageWindow] = Field(default_factory=list)


class OptimizeTable(BaseModel):
    """Optimal weights per (d, measure) and the advantage windows per d."""

    extrema: list[ExtremumRecord]
    windows: list[AdvantageWindow] = Field(default_factory=list)


class OrderingReport(BaseModel):
    """Whether a partially entangled input beats the maximally entangled one after damping."""

    d: float
    u_prime: float
    concurrence_gain: bool
    fstar_gain: bool
    discord_gain: bool
    initial_ordering_opposite: bool = Field(..., description="C(|psi(u')>) < 1")
    fstar_exact: bool = Field(..., description="Both states lie in the F* equality region")
    reversed: bool


class Figure1Row(BaseModel):
    d: float
    c_initial: float
    c_residual_u_high: float


class Figure2Row(BaseModel):
    d: float
    u: float
    concurrence: float
    discord: float


class RunConfig(BaseModel):
    """Validated parameters of one CLI invocation."""

    command: Command
    d: float | None = Field(None, ge=0.0, le=1.0)
    u: float | None = Field(None, ge=0.0, le=1.0)
    phi: float = Field(0.0, ge=0.0, lt=6.283185307179586)
    d_list: list[float] | None = None
    u_start: float = Field(0.0, ge=0.0, le=1.0)
    u_stop: float = Field(1.0, ge=0.0, le=1.0)
    u_step: float | None = Field(None, gt=0.0, le=0.5)
    measure: Measure | None = None
    output_path: Path | None = None
    format: Literal["csv", "json"] = "csv"
    tol: float | None = Field(None, gt=0.0)
    grid_refine: bool = True
    oracles: bool = True
    inject_fault: Literal["fef-sign"] | None = None

    @field_validator("d_list")
    @classmethod
    def _check_d_list(cls, value: list[float] | None) -> list[float] | None:
        if value is not None:
            if not value:
                raise ValueError("d_list must not be empty")
            bad = [x for x in value if not 0.0 <= x <= 1.0]
            if bad:
                raise ValueError(f"values outside [0, 1]: {bad}")
        return value

    @model_validator(mode="after")
    def _check_command(self) -> "RunConfig":
        if self.command == "point" and (self.d is None or self.u is None):
            raise ValueError("point requires both d and u")
        if self.command == "optimize":
            for d in self.d_values(FIG1_D_LIST):
                if not 0.0 < d < 1.0:
                    raise ValueError(f"optimize requires 0 < d < 1, got {d}")
        if self.u_start > self.u_stop:
            raise ValueError("u_start must not exceed u_stop")
        return self

    def d_values(self, default: list[float]) -> list[float]:
        """Explicit d list, else the single d, else the given default."""
        if self.d_list is not None:
            return list(self.d_list)
        if self.d is not None:
            return [self.d]
        return list(default)

    def default_d_list(self) -> list[float]:
        """Figure panels for figure2, the figure-1 curves otherwise."""
        return FIG2_D_LIST if self.command == "figure2" else FIG1_D_LIST

    def resolved_d_values(self) -> list[float]:
        """d values the command runs on, defaults filled in."""
        return self.d_values(self.default_d_list())

    def grid_step(self) -> float:
        """u_step, else the sweep or figure default."""
        if self.u_step is not None:
            return self.u_step
        return DEFAULT_U_STEP if self.command == "sweep" else FIGURE_STEP

    def parameters(self) -> dict[str, Any]:
        """Effective parameters the command consumes, for output metadata."""
        dumped = self.model_dump(mode="json")
        dumped["d_list"] = self.resolved_d_values()
        dumped["u_step"] = self.grid_step()
        fields = _CONSUMED[self.command]
        return {key: dumped[key] for key in fields if dumped[key] is not None}


class SuiteUsage(BaseModel):
    """Cost of running one verification suite."""

    duration_ms: float = Field(..., description="Wall time of the suite in milliseconds")
    evaluations: int = Field(0, description="Number of grid points checked")
    timestamp: datetime = Field(
        default_factory=lambda: datetime.now(UTC), description="When the suite ran"
    )


class SuiteResult(BaseModel):
    """Outcome of one verification suite."""

    name: str = Field(..., description="Suite name")
    status: Literal["success", "error"] = Field(..., description="'success' or 'error'")
    max_discrepancy: float = Field(..., description="Largest observed deviation")
    threshold: float = Field(..., description="Tolerance the deviation is checked against")
    message: str | None = Field(default=None, description="Human-readable message")
    failing_point: tuple[float, ...] | None = Field(
        default=None, description="(d, u, phi) of the first failure"
    )
    error_code: str | None = Field(default=None, description="Error code if status is error")
    usage: SuiteUsage | None = Field(default=None, description="Usage metrics")
