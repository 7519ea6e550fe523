"""CLI for the damped cat-state correlation toolkit."""

import logging
import os
from pathlib import Path
from typing import Annotated, Any

import typer
from dotenv import load_dotenv
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from src.app.runner import CorrelationRunner
from src.app.schemas import Measure, RunConfig
from src.physics.errors import OutOfRangeError, QCorrError

error_console = Console(stderr=True)
app = typer.Typer(
    help="Quantum correlations of cat states under amplitude damping",
    no_args_is_help=True,
)

logger = logging.getLogger(__name__)

EXIT_VERIFY_FAILED = 1
EXIT_BAD_ARGS = 2
EXIT_IO = 3


def _parse_d_list(raw: str | None) -> list[float] | None:
    if raw is None:
        return None
    try:
        return [float(item) for item in raw.split(",") if item.strip()]
    except ValueError as e:
        raise typer.BadParameter(f"expected comma-separated numbers, got {raw!r}") from e


def _fail(field: str, message: str, code: int = EXIT_BAD_ARGS) -> typer.Exit:
    error_console.print(f"[red]Error ({field}): {message}[/red]")
    return typer.Exit(code)


def _run(**fields: Any) -> None:
    """Validate, execute and emit one command, mapping failures to exit codes."""
    try:
        cfg = RunConfig(**fields)
        logger.debug("running %s with %s", cfg.command, cfg.parameters())
        output = CorrelationRunner().execute(cfg)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "arguments"
        raise _fail(field, first["msg"]) from e
    except OutOfRangeError as e:
        raise _fail(e.field, str(e)) from e
    except (QCorrError, ValueError) as e:
        raise _fail(getattr(e, "error_code", "arguments"), str(e)) from e

    if cfg.output_path is not None:
        try:
            CorrelationRunner.write(output, cfg.output_path)
        except OSError as e:
            raise _fail("out", str(e), EXIT_IO) from e
    else:
        typer.echo(output.text, nl=False)

    if not output.ok:
        error_console.print("[red]Verification failed[/red]")
        raise typer.Exit(EXIT_VERIFY_FAILED)


Fmt = Annotated[str, typer.Option("--format", help="Output format: csv or json")]
Out = Annotated[Path | None, typer.Option("--out", help="Write to this file instead of stdout")]
DList = Annotated[
    str | None, typer.Option("--d-list", help="Comma-separated damping strengths")
]
Phi = Annotated[float, typer.Option("--phi", help="Relative phase of |11> in [0, 2 pi)")]
NoRefine = Annotated[
    bool, typer.Option("--no-refine", help="Skip the local refinement after grid searches")
]
NoOracles = Annotated[
    bool, typer.Option("--no-oracles", help="Skip the brute-force FEF and discord searches")
]


@app.callback()
def main(
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Debug logging")] = False,
) -> None:
    """Set up environment and logging; stdout is reserved for results."""
    load_dotenv()
    name = os.getenv("QCORR_LOG_LEVEL", "WARNING").upper()
    level = logging.DEBUG if verbose else getattr(logging, name, logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=error_console, show_path=False)],
        force=True,
    )


@app.command()
def point(
    d: Annotated[float | None, typer.Option("--d", help="Damping strength")] = None,
    u: Annotated[float | None, typer.Option("--u", help="Weight of |00>")] = None,
    phi: Phi = 0.0,
    no_oracles: NoOracles = False,
    no_refine: NoRefine = False,
    fmt: Fmt = "csv",
    out: Out = None,
) -> None:
    """Every measure of one damped cat state, closed form next to oracle."""
    _run(
        command="point",
        d=d,
        u=u,
        phi=phi,
        oracles=not no_oracles,
        grid_refine=not no_refine,
        format=fmt,
        output_path=out,
    )


@app.command("sweep")
def sweep_command(
    d_list: DList = None,
    d: Annotated[float | None, typer.Option("--d", help="Single damping strength")] = None,
    u_start: Annotated[float, typer.Option("--u-start")] = 0.0,
    u_stop: Annotated[float, typer.Option("--u-stop")] = 1.0,
    u_step: Annotated[float | None, typer.Option("--u-step", help="Grid step in u")] = None,
    phi: Phi = 0.0,
    no_oracles: NoOracles = False,
    no_refine: NoRefine = False,
    fmt: Fmt = "csv",
    out: Out = None,
) -> None:
    """Reports on a (d, u) grid with extrema, windows and ESD boundaries."""
    _run(
        command="sweep",
        d=d,
        d_list=_parse_d_list(d_list),
        u_start=u_start,
        u_stop=u_stop,
        u_step=u_step,
        phi=phi,
        oracles=not no_oracles,
        grid_refine=not no_refine,
        format=fmt,
        output_path=out,
    )


@app.command()
def optimize(
    d_list: DList = None,
    d: Annotated[float | None, typer.Option("--d", help="Single damping strength")] = None,
    measure: Annotated[
        Measure | None, typer.Option("--measure", help="Only this measure")
    ] = None,
    tol: Annotated[float | None, typer.Option("--tol", help="Golden-section tolerance")] = None,
    fmt: Fmt = "csv",
    out: Out = None,
) -> None:
    """Optimal input weight per measure and the advantage windows."""
    _run(
        command="optimize",
        d=d,
        d_list=_parse_d_list(d_list),
        measure=measure,
        tol=tol,
        format=fmt,
        output_path=out,
    )


@app.command()
def figure1(
    d_list: DList = None,
    step: Annotated[
        float | None, typer.Option("--u-step", "--step", help="Grid step in c_initial")
    ] = None,
    fmt: Fmt = "csv",
    out: Out = None,
) -> None:
    """Residual against initial concurrence on the u >= 1/2 branch."""
    _run(
        command="figure1",
        d_list=_parse_d_list(d_list),
        u_step=step,
        format=fmt,
        output_path=out,
    )


@app.command()
def figure2(
    d_list: DList = None,
    step: Annotated[
        float | None, typer.Option("--u-step", "--step", help="Grid step in u")
    ] = None,
    fmt: Fmt = "csv",
    out: Out = None,
) -> None:
    """Concurrence and discord against the input weight u."""
    _run(
        command="figure2",
        d_list=_parse_d_list(d_list),
        u_step=step,
        format=fmt,
        output_path=out,
    )


@app.command()
def verify(
    tol: Annotated[
        float | None, typer.Option("--tol", help="Override every suite threshold")
    ] = None,
    inject_fault: Annotated[
        str | None, typer.Option("--inject-fault", help="Negative control: fef-sign")
    ] = None,
    fmt: Fmt = "csv",
    out: Out = None,
) -> None:
    """Run the self-verification suites; exit 1 if any fails."""
    _run(command="verify", tol=tol, inject_fault=inject_fault, format=fmt, output_path=out)


if __name__ == "__main__":
    app()
