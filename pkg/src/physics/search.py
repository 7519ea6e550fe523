"""Deterministic grid searches with local refinement, and bracketed scalar maximization."""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.optimize import minimize, minimize_scalar

from src.physics.constants import TOL

logger = logging.getLogger(__name__)

BatchObjective = Callable[[npt.NDArray[np.float64]], npt.NDArray[np.float64]]


@dataclass(frozen=True)
class SearchResult:
    """Best objective value, where it was found, and how many points were tried."""

    value: float
    argbest: tuple[float, ...]
    evaluations: int
    refined: bool


def grid_then_refine(
    objective: BatchObjective,
    axes: Sequence[npt.NDArray[np.float64]],
    *,
    maximize: bool,
    refine: bool = True,
    xatol: float = TOL.refine_step,
) -> SearchResult:
    """Scan a tensor grid, then polish the best point with Nelder-Mead.

    Args:
        objective: Maps an (n, k) array of points to n objective values
        axes: One 1-D coordinate array per dimension
        maximize: Search for the maximum instead of the minimum
        refine: Run the local refinement after the grid scan
        xatol: Simplex size at which refinement stops

    Returns:
        SearchResult holding the better of the grid optimum and the refined one
    """
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.reshape(-1) for m in mesh], axis=1)
    values = objective(points)
    best = int(np.argmax(values) if maximize else np.argmin(values))
    best_x = points[best]
    best_value = float(values[best])
    evaluations = len(points)

    if not refine:
        return SearchResult(best_value, tuple(float(x) for x in best_x), evaluations, False)

    sign = -1.0 if maximize else 1.0
    steps = [float(ax[1] - ax[0]) if len(ax) > 1 else 0.1 for ax in axes]
    offsets = np.eye(len(axes)) * np.array(steps)
    simplex = np.vstack([best_x, best_x + offsets])

    def scalar(x: npt.NDArray[np.float64]) -> float:
        return sign * float(objective(x.reshape(1, -1))[0])

    result = minimize(
        scalar,
        best_x,
        method="Nelder-Mead",
        options={
            "xatol": xatol,
            "fatol": 1e-15,
            "maxiter": 4000,
            "maxfev": 8000,
            "initial_simplex": simplex,
        },
    )
    evaluations += int(result.nfev)
    refined_value = sign * float(result.fun)
    logger.debug(
        "refinement: grid %.12f -> %.12f after %d evaluations",
        best_value,
        refined_value,
        result.nfev,
    )
    improved = refined_value > best_value if maximize else refined_value < best_value
    if improved:
        return SearchResult(refined_value, tuple(float(x) for x in result.x), evaluations, True)
    return SearchResult(best_value, tuple(float(x) for x in best_x), evaluations, True)


def scan_then_maximize(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    step: float = TOL.coarse_step,
    tol: float = TOL.optimizer,
) -> tuple[float, float]:
    """Coarse scan for the basin of the global maximum, then bounded Brent inside it.

    Returns:
        (x, f(x)); the grid point is kept if refinement does not improve on it
    """
    count = int(round((hi - lo) / step)) + 1
    grid = np.linspace(lo, hi, count)
    values = [f(float(x)) for x in grid]
    i = int(np.argmax(values))
    left = float(grid[max(i - 1, 0)])
    right = float(grid[min(i + 1, count - 1)])
    result = minimize_scalar(
        lambda x: -f(float(x)),
        bounds=(left, right),
        method="bounded",
        options={"xatol": tol},
    )
    x, fx = float(result.x), -float(result.fun)
    logger.debug(
        "bracket [%.6f, %.6f]: x=%.10f after %d evaluations", left, right, x, result.nfev
    )
    if fx < values[i]:
        return float(grid[i]), float(values[i])
    return x, fx
