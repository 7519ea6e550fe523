"""Closed-form curves, optimal input weights, region boundaries and figure data."""

import logging
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from enum import StrEnum

import numpy as np
import numpy.typing as npt
from scipy.optimize import bisect

from src.app.schemas import (
    AdvantageWindow,
    CorrelationReport,
    EsdBoundary,
    ExtremumRecord,
    Figure1Row,
    Figure2Row,
    Measure,
    OrderingReport,
    SweepTable,
)
from src.physics.constants import TOL
from src.physics.errors import OutOfRangeError, TheoremNotApplicableError
from src.physics.family import CatParams, decohered_cat, initial_concurrence
from src.physics.measures import (
    TheoremBranch,
    concurrence,
    discord_bruteforce,
    discord_from_lambdas,
    discord_lambdas,
    discord_xstate,
    fef,
    fef_bruteforce,
    fef_star_upper,
    negativity,
    select_discord_branch,
    xstate_entries,
)
from src.physics.search import scan_then_maximize

logger = logging.getLogger(__name__)


class ReparamBranch(StrEnum):
    """Half of the u interval on which the initial concurrence is inverted."""

    U_HIGH = "u_high"
    U_LOW = "u_low"


def _check_unit(name: str, value: float) -> None:
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise OutOfRangeError(name, value, "[0, 1]")


def _check_open(d: float) -> None:
    if not (math.isfinite(d) and 0.0 < d < 1.0):
        raise OutOfRangeError("d", d, "(0, 1)")


def unit_grid(step: float, start: float = 0.0, stop: float = 1.0) -> npt.NDArray[np.float64]:
    """Evenly spaced points from start to stop inclusive."""
    count = int(round((stop - start) / step)) + 1
    return np.linspace(start, stop, count)


def concurrence_closed(d: float, u: float) -> float:
    """max{0, 2 dbar (sqrt(u ubar) - ubar d)}."""
    _check_unit("d", d)
    _check_unit("u", u)
    ubar = 1.0 - u
    return max(0.0, 2.0 * (1.0 - d) * (math.sqrt(u * ubar) - ubar * d))


def fef_closed(d: float, u: float) -> float:
    """1/2 + dbar (sqrt(u ubar) - ubar d)."""
    _check_unit("d", d)
    _check_unit("u", u)
    ubar = 1.0 - u
    return 0.5 + (1.0 - d) * (math.sqrt(u * ubar) - ubar * d)


def fef_max_closed(d: float) -> float:
    """Largest FEF over u: 1/2 + dbar (sqrt(1 + d^2) - d) / 2."""
    _check_open(d)
    return 0.5 + 0.5 * (1.0 - d) * (math.sqrt(1.0 + d * d) - d)


def discord_closed(d: float, u: float) -> float:
    """Discord of the damped cat state from its closed-form lambdas."""
    _check_unit("d", d)
    return discord_from_lambdas(discord_lambdas(d, CatParams(u)))


_CLOSED_FORMS: dict[Measure, Callable[[float, float], float]] = {
    Measure.CONCURRENCE: concurrence_closed,
    Measure.FEF: fef_closed,
    Measure.DISCORD: discord_closed,
}


def u_m_concurrence(d: float) -> tuple[float, float]:
    """Optimal weight u_m = 1/2 + d / (2 sqrt(1 + d^2)) and the concurrence it reaches.

    Raises:
        OutOfRangeError: Unless 0 < d < 1
    """
    _check_open(d)
    root = math.sqrt(1.0 + d * d)
    return 0.5 + d / (2.0 * root), (1.0 - d) * (root - d)


def advantage_window_concurrence(d: float) -> tuple[float, float]:
    """Interval (1/2, 1/2 + d/(1+d^2)) where C(d, u) exceeds C(d, 1/2)."""
    _check_open(d)
    return 0.5, 0.5 + d / (1.0 + d * d)


def u_from_initial_concurrence(c0: float, branch: ReparamBranch) -> float:
    """Invert c0 = 2 sqrt(u (1-u)) on the chosen half of [0, 1]."""
    _check_unit("c0", c0)
    root = math.sqrt(max(1.0 - c0 * c0, 0.0))
    if branch is ReparamBranch.U_HIGH:
        return 0.5 * (1.0 + root)
    return 0.5 * (1.0 - root)


def reparametrized_concurrence(d: float, c0: float, branch: ReparamBranch) -> float:
    """Residual concurrence as a function of the initial concurrence c0."""
    _check_unit("d", d)
    _check_unit("c0", c0)
    root = math.sqrt(max(1.0 - c0 * c0, 0.0))
    dbar = 1.0 - d
    if branch is ReparamBranch.U_HIGH:
        return dbar * (c0 - d * (1.0 - root))
    return max(0.0, dbar * (c0 - d * (1.0 + root)))


def esd_boundary_u(d: float) -> float:
    """Weight u at which sqrt(u/(1-u)) = d."""
    _check_unit("d", d)
    return d * d / (1.0 + d * d)


def esd_boundary_d(u: float) -> float:
    """Strength d = sqrt(u/(1-u)) at which entanglement dies, clamped to 1."""
    _check_unit("u", u)
    if u >= 0.5:
        return 1.0
    return min(1.0, math.sqrt(u / (1.0 - u)))


def in_esd_region(d: float, u: float) -> bool:
    """sqrt(u/(1-u)) < d with d > 0 and u < 1."""
    _check_unit("d", d)
    _check_unit("u", u)
    return d > 0.0 and u < 1.0 and math.sqrt(u / (1.0 - u)) < d


def in_equality_region(d: float, u: float) -> bool:
    """sqrt(u/(1-u)) >= d, where the maximum FEF equals (1 + N)/2."""
    return u == 1.0 or not in_esd_region(d, u)


def optimize_measure(d: float, measure: Measure, tol: float = TOL.optimizer) -> ExtremumRecord:
    """Weight u in [0, 1] maximizing a measure of the damped state.

    Coarse scan on a 1e-3 grid, then bounded Brent refinement on the
    bracketing interval down to `tol`.
    """
    _check_open(d)
    closed = _CLOSED_FORMS[measure]
    u_star, value = scan_then_maximize(lambda u: closed(d, u), 0.0, 1.0, tol=tol)
    analytic = u_m_concurrence(d)[0] if measure is not Measure.DISCORD else None
    logger.debug("optimum of %s at d=%.3f: u*=%.10f value=%.10f", measure, d, u_star, value)
    return ExtremumRecord(measure=measure, d=d, u_star=u_star, value=value, u_m_analytic=analytic)


def advantage_window_numeric(
    d: float, measure: Measure, tol: float = TOL.optimizer
) -> tuple[float, float]:
    """Interval (1/2, hi) where M(d, u) > M(d, 1/2), hi found by bisection."""
    closed = _CLOSED_FORMS[measure]
    optimum = optimize_measure(d, measure, tol)
    reference = closed(d, 0.5)

    def gain(u: float) -> float:
        return closed(d, u) - reference

    if gain(optimum.u_star) <= 0.0:
        return 0.5, 0.5
    hi = bisect(gain, optimum.u_star, 1.0, xtol=tol)
    return 0.5, float(hi)


def reversal_window(d: float) -> tuple[float, float]:
    """Open interval of u where concurrence, maximum FEF and discord all beat u = 1/2."""
    return 0.5, min(
        advantage_window_concurrence(d)[1],
        advantage_window_numeric(d, Measure.DISCORD)[1],
    )


def ordering_reversal_check(d: float, u_prime: float) -> OrderingReport:
    """Compare the damped states from u' and from the maximally entangled input."""
    reference = decohered_cat(d, CatParams(0.5))
    candidate = decohered_cat(d, CatParams(u_prime))
    concurrence_gain = concurrence(candidate) > concurrence(reference)
    fstar_gain = fef_star_upper(candidate) > fef_star_upper(reference)
    discord_gain = discord_xstate(xstate_entries(candidate)) > discord_xstate(
        xstate_entries(reference)
    )
    opposite = initial_concurrence(CatParams(u_prime)) < 1.0
    return OrderingReport(
        d=d,
        u_prime=u_prime,
        concurrence_gain=concurrence_gain,
        fstar_gain=fstar_gain,
        discord_gain=discord_gain,
        initial_ordering_opposite=opposite,
        fstar_exact=in_equality_region(d, u_prime) and in_equality_region(d, 0.5),
        reversed=concurrence_gain and fstar_gain and discord_gain and opposite,
    )


def correlation_report(
    d: float,
    u: float,
    phi: float = 0.0,
    *,
    oracles: bool = True,
    refine: bool = True,
    fef_grid: int = 41,
    discord_grid: tuple[int, int] = (181, 121),
) -> CorrelationReport:
    """Every measure of the damped cat state at (d, u, phi), closed form and oracle."""
    rho = decohered_cat(d, CatParams(u, phi))
    x = xstate_entries(rho)
    d_brute = discord_bruteforce(rho, discord_grid, refine) if oracles else None
    try:
        branch = select_discord_branch(x)
        d_xstate = discord_xstate(x)
    except TheoremNotApplicableError:
        logger.warning("no optimal-measurement branch at d=%s u=%s; using search", d, u)
        branch = TheoremBranch.FALLBACK
        d_xstate = d_brute if d_brute is not None else discord_bruteforce(rho, discord_grid, refine)
    return CorrelationReport(
        d=d,
        u=u,
        phi=phi,
        c_closed=concurrence_closed(d, u),
        c_wootters=concurrence(rho),
        n=negativity(rho),
        f_closed=fef_closed(d, u),
        f_horodecki=fef(rho),
        f_brute=fef_bruteforce(rho, fef_grid, refine) if oracles else None,
        fstar_upper=fef_star_upper(rho),
        d_xstate=d_xstate,
        d_brute=d_brute,
        esd=in_esd_region(d, u),
        theorem_branch=branch,
        fstar_exact=in_equality_region(d, u),
    )


def sweep(
    d_values: Sequence[float],
    u_values: Sequence[float],
    phi: float = 0.0,
    *,
    oracles: bool = True,
    refine: bool = True,
    workers: int = 1,
    fef_grid: int = 41,
    discord_grid: tuple[int, int] = (181, 121),
) -> SweepTable:
    """Reports on the (d, u) grid in d-major order, with extrema and boundaries per d."""
    for d in d_values:
        _check_unit("d", d)
    for u in u_values:
        _check_unit("u", u)
    points = [(float(d), float(u)) for d in d_values for u in u_values]

    def evaluate(point: tuple[float, float]) -> CorrelationReport:
        return correlation_report(
            point[0],
            point[1],
            phi,
            oracles=oracles,
            refine=refine,
            fef_grid=fef_grid,
            discord_grid=discord_grid,
        )

    logger.info("sweeping %d points with %d worker(s)", len(points), workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(evaluate, points))
    else:
        reports = [evaluate(p) for p in points]

    interior = [float(d) for d in d_values if 0.0 < d < 1.0]
    extrema = [optimize_measure(d, m) for d in interior for m in Measure]
    windows = [
        AdvantageWindow(
            d=d,
            concurrence_hi=advantage_window_concurrence(d)[1],
            concurrence_hi_numeric=advantage_window_numeric(d, Measure.CONCURRENCE)[1],
            discord_hi=advantage_window_numeric(d, Measure.DISCORD)[1],
        )
        for d in interior
    ]
    return SweepTable(
        phi=phi,
        reports=reports,
        extrema=extrema,
        esd_boundary=[EsdBoundary(d=float(d), u_boundary=esd_boundary_u(d)) for d in d_values],
        windows=windows,
    )


def figure1_rows(d_values: Sequence[float], step: float = 0.005) -> list[Figure1Row]:
    """Residual versus initial concurrence on the u >= 1/2 branch."""
    return [
        Figure1Row(
            d=float(d),
            c_initial=float(c0),
            c_residual_u_high=reparametrized_concurrence(d, float(c0), ReparamBranch.U_HIGH),
        )
        for d in d_values
        for c0 in unit_grid(step)
    ]


def figure2_rows(d_values: Sequence[float], step: float = 0.005) -> list[Figure2Row]:
    """Concurrence and discord of the damped state against the input weight u."""
    return [
        Figure2Row(
            d=float(d),
            u=float(u),
            concurrence=concurrence_closed(d, float(u)),
            discord=discord_closed(d, float(u)),
        )
        for d in d_values
        for u in unit_grid(step)
    ]
