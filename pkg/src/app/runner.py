"""Command dispatcher: turns a validated RunConfig into a deterministic payload."""

import logging
import os
import time
from dataclasses import dataclass
from pathlib import Path

from src.app import export
from src.app.schemas import (
    AdvantageWindow,
    Measure,
    OptimizeTable,
    RunConfig,
    SuiteResult,
    SweepTable,
)
from src.app.verify import run_verification
from src.physics.analysis import (
    advantage_window_concurrence,
    advantage_window_numeric,
    correlation_report,
    figure1_rows,
    figure2_rows,
    optimize_measure,
    sweep,
    unit_grid,
)
from src.physics.constants import TOL

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunOutput:
    """Payload for stdout or a file, and whether the command succeeded."""

    text: str
    ok: bool = True


def _env_int(name: str, default: str) -> int:
    raw = os.getenv(name, default)
    try:
        value = int(raw)
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from e
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def parse_grid(raw: str) -> tuple[int, int]:
    """Parse a 'THETAxPHI' grid size such as '181x121'."""
    parts = raw.lower().split("x")
    if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
        raise ValueError(f"grid must look like 181x121, got {raw!r}")
    theta, phi = (int(p) for p in parts)
    if theta < 2 or phi < 2:
        raise ValueError(f"grid needs at least 2 points per angle, got {raw!r}")
    return theta, phi


class CorrelationRunner:
    """Runs one CLI command against the physics library."""

    def __init__(
        self,
        fef_grid: int | None = None,
        discord_grid: tuple[int, int] | None = None,
        workers: int | None = None,
    ):
        """Initialize the runner.

        Args:
            fef_grid: Points per angle of the FEF search (QCORR_FEF_GRID)
            discord_grid: (theta, phi) points of the discord search (QCORR_DISCORD_GRID)
            workers: Thread pool size for sweeps (QCORR_WORKERS)
        """
        self.fef_grid = fef_grid or _env_int("QCORR_FEF_GRID", "41")
        self.discord_grid = discord_grid or parse_grid(os.getenv("QCORR_DISCORD_GRID", "181x121"))
        self.workers = workers or _env_int("QCORR_WORKERS", "1")

    def execute(self, cfg: RunConfig) -> RunOutput:
        """Dispatch on cfg.command."""
        start = time.time()
        if cfg.command == "point":
            output = self.run_point(cfg)
        elif cfg.command == "sweep":
            output = self.run_sweep(cfg)
        elif cfg.command == "optimize":
            output = self.run_optimize(cfg)
        elif cfg.command == "figure1":
            output = self.run_figure1(cfg)
        elif cfg.command == "figure2":
            output = self.run_figure2(cfg)
        else:
            output = self.run_verify(cfg)
        logger.info("%s finished in %.0f ms", cfg.command, (time.time() - start) * 1000)
        return output

    def run_point(self, cfg: RunConfig) -> RunOutput:
        assert cfg.d is not None and cfg.u is not None
        report = correlation_report(
            cfg.d,
            cfg.u,
            cfg.phi,
            oracles=cfg.oracles,
            refine=cfg.grid_refine,
            fef_grid=self.fef_grid,
            discord_grid=self.discord_grid,
        )
        if cfg.format == "json":
            return RunOutput(export.to_json(report, cfg.command, cfg.parameters()))
        return RunOutput(export.to_csv([report], cfg.command, cfg.parameters()))

    def run_sweep(self, cfg: RunConfig) -> RunOutput:
        u_values = unit_grid(cfg.grid_step(), cfg.u_start, cfg.u_stop)
        table = sweep(
            cfg.resolved_d_values(),
            [float(u) for u in u_values],
            cfg.phi,
            oracles=cfg.oracles,
            refine=cfg.grid_refine,
            workers=self.workers,
            fef_grid=self.fef_grid,
            discord_grid=self.discord_grid,
        )
        if cfg.format == "json":
            return RunOutput(export.to_json(table, cfg.command, cfg.parameters()))
        return RunOutput(
            export.to_csv(table.reports, cfg.command, cfg.parameters(), _sweep_extras(table))
        )

    def run_optimize(self, cfg: RunConfig) -> RunOutput:
        tol = cfg.tol if cfg.tol is not None else TOL.optimizer
        measures = [cfg.measure] if cfg.measure is not None else list(Measure)
        d_values = cfg.resolved_d_values()
        table = OptimizeTable(
            extrema=[optimize_measure(d, m, tol) for d in d_values for m in measures],
            windows=[
                AdvantageWindow(
                    d=d,
                    concurrence_hi=advantage_window_concurrence(d)[1],
                    concurrence_hi_numeric=advantage_window_numeric(d, Measure.CONCURRENCE, tol)[1],
                    discord_hi=advantage_window_numeric(d, Measure.DISCORD, tol)[1],
                )
                for d in d_values
            ],
        )
        if cfg.format == "json":
            return RunOutput(export.to_json(table, cfg.command, cfg.parameters()))
        extras = [_window_line(w) for w in table.windows]
        return RunOutput(export.to_csv(table.extrema, cfg.command, cfg.parameters(), extras))

    def run_figure1(self, cfg: RunConfig) -> RunOutput:
        rows = figure1_rows(cfg.resolved_d_values(), cfg.grid_step())
        if cfg.format == "json":
            return RunOutput(export.to_json(rows, cfg.command, cfg.parameters()))
        return RunOutput(export.to_csv(rows, cfg.command, cfg.parameters()))

    def run_figure2(self, cfg: RunConfig) -> RunOutput:
        rows = figure2_rows(cfg.resolved_d_values(), cfg.grid_step())
        if cfg.format == "json":
            return RunOutput(export.to_json(rows, cfg.command, cfg.parameters()))
        return RunOutput(export.to_csv(rows, cfg.command, cfg.parameters()))

    def run_verify(self, cfg: RunConfig) -> RunOutput:
        results = run_verification(cfg.tol, cfg.inject_fault, self.fef_grid, self.discord_grid)
        ok = all(r.status == "success" for r in results)
        if cfg.format == "json":
            text = export.to_json(results, cfg.command, cfg.parameters(), exclude={"usage"})
            return RunOutput(text, ok)
        lines = export.metadata_lines(cfg.command, cfg.parameters())
        lines.extend(_suite_line(r) for r in results)
        passed = sum(r.status == "success" for r in results)
        lines.append(f"# result: {'pass' if ok else 'fail'} {passed}/{len(results)}")
        return RunOutput("\n".join(lines) + "\n", ok)

    @staticmethod
    def write(output: RunOutput, path: Path) -> None:
        """Write the payload to a file; OSError propagates to the caller."""
        path.write_text(output.text, encoding="utf-8")
        logger.info("wrote %d bytes to %s", len(output.text), path)


def _fmt(value: float) -> str:
    return export.format_value(value)


def _window_line(w: AdvantageWindow) -> str:
    return (
        f"window d={_fmt(w.d)} concurrence_hi={_fmt(w.concurrence_hi)} "
        f"concurrence_hi_numeric={_fmt(w.concurrence_hi_numeric)} discord_hi={_fmt(w.discord_hi)}"
    )


def _sweep_extras(table: SweepTable) -> list[str]:
    lines = [
        f"extremum measure={e.measure.value} d={_fmt(e.d)} u_star={_fmt(e.u_star)} "
        f"value={_fmt(e.value)}"
        for e in table.extrema
    ]
    lines.extend(_window_line(w) for w in table.windows)
    lines.extend(
        f"esd_boundary d={_fmt(b.d)} u_boundary={_fmt(b.u_boundary)}" for b in table.esd_boundary
    )
    return lines


def _suite_line(r: SuiteResult) -> str:
    status = "PASS" if r.status == "success" else "FAIL"
    line = (
        f"{status} {r.name} max_discrepancy={_fmt(r.max_discrepancy)} "
        f"threshold={_fmt(r.threshold)}"
    )
    if r.failing_point is not None:
        point = ",".join(_fmt(x) for x in r.failing_point)
        line += f" at=({point}) {r.message or ''}".rstrip()
    return line
