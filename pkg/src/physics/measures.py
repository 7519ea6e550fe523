"""Correlation measures of two-qubit states: analytic paths and numerical oracles."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import numpy.typing as npt

from src.physics.channel import DampingStrength
from src.physics.constants import TOL
from src.physics.errors import InvalidStateError, TheoremNotApplicableError
from src.physics.family import CatParams
from src.physics.qmat import (
    PAULIS,
    SPIN_FLIP,
    DensityMatrix4,
    RealMatrix3,
    entropy_of_spectrum,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    partial_transpose_b,
    singular_values_3,
    von_neumann_entropy,
)
from src.physics.search import SearchResult, grid_then_refine

logger = logging.getLogger(__name__)

SignRule = Callable[[float], int]

_PAULI_STACK = np.stack(PAULIS)
_I2 = np.eye(2, dtype=np.complex128)


class TheoremBranch(StrEnum):
    """Which optimal measurement the X-state theorem selects."""

    SIGMA_X = "sigma_x"
    SIGMA_Z = "sigma_z"
    FALLBACK = "fallback"


@dataclass(frozen=True)
class XStateEntries:
    """Nonzero entries of an X state: four populations and two coherences."""

    rho00: float
    rho11: float
    rho22: float
    rho33: float
    rho03: complex
    rho12: complex

    def __post_init__(self) -> None:
        total = self.rho00 + self.rho11 + self.rho22 + self.rho33
        if abs(total - 1.0) > TOL.density_trace:
            raise InvalidStateError(f"populations sum to {total:.15f}")
        if abs(self.rho03) > math.sqrt(max(self.rho00 * self.rho33, 0.0)) + TOL.xstate:
            raise InvalidStateError("|rho03| exceeds sqrt(rho00 rho33)")
        if abs(self.rho12) > math.sqrt(max(self.rho11 * self.rho22, 0.0)) + TOL.xstate:
            raise InvalidStateError("|rho12| exceeds sqrt(rho11 rho22)")

    @property
    def populations(self) -> tuple[float, float, float, float]:
        return (self.rho00, self.rho11, self.rho22, self.rho33)


@dataclass(frozen=True)
class MeasurementBloch:
    """Bloch angles of a projective measurement axis on qubit A."""

    theta: float
    phi_m: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= math.pi:
            raise InvalidStateError(f"theta={self.theta} outside [0, pi]")
        if not 0.0 <= self.phi_m < 2.0 * math.pi:
            raise InvalidStateError(f"phi_m={self.phi_m} outside [0, 2 pi)")

    @classmethod
    def folded(cls, theta: float, phi_m: float) -> "MeasurementBloch":
        """Map arbitrary angles onto the canonical ranges."""
        theta = theta % (2.0 * math.pi)
        if theta > math.pi:
            theta = 2.0 * math.pi - theta
            phi_m += math.pi
        return cls(theta, phi_m % (2.0 * math.pi))

    @property
    def axis(self) -> npt.NDArray[np.float64]:
        return np.array(
            [
                math.sin(self.theta) * math.cos(self.phi_m),
                math.sin(self.theta) * math.sin(self.phi_m),
                math.cos(self.theta),
            ]
        )


@dataclass(frozen=True)
class DiscordLambdas:
    """Joint spectrum (l1..l4), sigma_x-conditional spectrum (l5, l6), marginal of A (l7, l8)."""

    l1: float
    l2: float
    l3: float
    l4: float
    l5: float
    l6: float
    l7: float
    l8: float

    def __post_init__(self) -> None:
        sums = (
            self.l1 + self.l2 + self.l3 + self.l4,
            self.l5 + self.l6,
            self.l7 + self.l8,
        )
        if any(abs(s - 1.0) > TOL.density_trace for s in sums):
            raise InvalidStateError(f"lambda groups sum to {sums}")
        if min(self.values) < -TOL.radicand:
            raise InvalidStateError(f"negative lambda {min(self.values):.3e}")

    @property
    def values(self) -> tuple[float, ...]:
        return (self.l1, self.l2, self.l3, self.l4, self.l5, self.l6, self.l7, self.l8)


def concurrence(rho: DensityMatrix4) -> float:
    """Wootters concurrence max{0, s1 - s2 - s3 - s4}.

    The s_i are the singular values of tau = G^T (sigma_y x sigma_y) G with
    rho = G G^+, i.e. the square roots of the eigenvalues of rho rho~.
    """
    values, vectors = np.linalg.eigh(rho.matrix)
    keep = values > TOL.rank
    g = vectors[:, keep] * np.sqrt(values[keep])
    tau = g.T @ SPIN_FLIP @ g
    s = np.zeros(4)
    singular = np.linalg.svd(tau, compute_uv=False)
    s[: len(singular)] = singular
    return max(0.0, float(s[0] - s[1] - s[2] - s[3]))


def negativity(rho: DensityMatrix4) -> float:
    """max{0, -2 lambda_min(rho^Gamma)}."""
    lowest = hermitian_eigenvalues(partial_transpose_b(rho))[-1]
    return max(0.0, -2.0 * lowest)


def correlation_matrix(rho: DensityMatrix4) -> RealMatrix3:
    """T[i, j] = Tr(rho sigma_i x sigma_j)."""
    t = np.empty((3, 3))
    for i, si in enumerate(PAULIS):
        for j, sj in enumerate(PAULIS):
            t[i, j] = float(np.real(np.trace(rho.matrix @ kron(si, sj))))
    return t


def det_sign(det: float) -> int:
    """Sign of a determinant with a dead band of TOL.sign_dead_band around zero."""
    if det < -TOL.sign_dead_band:
        return -1
    if det > TOL.sign_dead_band:
        return 1
    return 0


def fef(rho: DensityMatrix4, sign: SignRule = det_sign) -> float:
    """Fully entangled fraction from the singular values of the correlation matrix."""
    t = correlation_matrix(rho)
    nu = singular_values_3(t)
    return (1.0 + nu[0] + nu[1] - sign(float(np.linalg.det(t))) * nu[2]) / 4.0


def _maximally_entangled(points: npt.NDArray[np.float64]) -> npt.NDArray[np.complex128]:
    """(I x U)|Phi+> for U = Rz(alpha) Ry(beta) Rz(gamma), one row per angle triple."""
    alpha, beta, gamma = points[:, 0], points[:, 1], points[:, 2]
    c, s = np.cos(beta / 2.0), np.sin(beta / 2.0)
    u00 = np.exp(-0.5j * (alpha + gamma)) * c
    u01 = -np.exp(-0.5j * (alpha - gamma)) * s
    u10 = np.exp(0.5j * (alpha - gamma)) * s
    u11 = np.exp(0.5j * (alpha + gamma)) * c
    return np.stack([u00, u10, u01, u11], axis=1) / math.sqrt(2.0)


def fef_search(rho: DensityMatrix4, grid: int = 41, refine: bool = True) -> SearchResult:
    """Maximize <phi|rho|phi> over maximally entangled |phi> on a 3-angle grid."""
    m = rho.matrix

    def overlap(points: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        phi = _maximally_entangled(points)
        return np.real(np.einsum("ni,ij,nj->n", phi.conj(), m, phi))

    axes = [
        np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False),
        np.linspace(0.0, math.pi, grid),
        np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False),
    ]
    result = grid_then_refine(overlap, axes, maximize=True, refine=refine)
    logger.debug("fef search: %.12f over %d evaluations", result.value, result.evaluations)
    return result


def fef_bruteforce(rho: DensityMatrix4, grid: int = 41, refine: bool = True) -> float:
    """Lower bound on the fully entangled fraction by direct overlap maximization."""
    return fef_search(rho, grid, refine).value


def fef_star_upper(rho: DensityMatrix4) -> float:
    """Upper bound (1 + N)/2 on the maximum FEF reachable by local operations."""
    return (1.0 + negativity(rho)) / 2.0


def mutual_information(rho: DensityMatrix4) -> float:
    """I = S(rho_A) + S(rho_B) - S(rho), in bits."""
    return (
        von_neumann_entropy(partial_trace(rho, "A"))
        + von_neumann_entropy(partial_trace(rho, "B"))
        - von_neumann_entropy(rho)
    )


def xstate_entries(rho: DensityMatrix4) -> XStateEntries:
    """Read the X-pattern entries; raises InvalidStateError for other shapes."""
    m = rho.matrix
    mask = np.ones((4, 4), dtype=bool)
    for i, j in [(0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)]:
        mask[i, j] = False
    stray = float(np.max(np.abs(m[mask])))
    if stray > TOL.xstate:
        raise InvalidStateError(f"not an X state (off-pattern entry {stray:.3e})")
    return XStateEntries(
        rho00=float(m[0, 0].real),
        rho11=float(m[1, 1].real),
        rho22=float(m[2, 2].real),
        rho33=float(m[3, 3].real),
        rho03=complex(m[0, 3]),
        rho12=complex(m[1, 2]),
    )


def _pair(mean: float, radius: float) -> tuple[float, float]:
    return mean + radius, mean - radius


def xstate_lambdas(x: XStateEntries) -> DiscordLambdas:
    """Spectra entering the sigma_x-branch discord of a general X state.

    Local phase rotations make both coherences real and nonnegative, so only
    |rho03| and |rho12| enter.
    """
    l1, l2 = _pair(
        0.5 * (x.rho11 + x.rho22),
        0.5 * math.hypot(x.rho11 - x.rho22, 2.0 * abs(x.rho12)),
    )
    l3, l4 = _pair(
        0.5 * (x.rho00 + x.rho33),
        0.5 * math.hypot(x.rho00 - x.rho33, 2.0 * abs(x.rho03)),
    )
    bias = x.rho00 + x.rho22 - x.rho11 - x.rho33
    l5, l6 = _pair(0.5, 0.5 * math.hypot(bias, 2.0 * (abs(x.rho03) + abs(x.rho12))))
    return DiscordLambdas(l1, l2, l3, l4, l5, l6, x.rho00 + x.rho11, x.rho22 + x.rho33)


def discord_lambdas(d: float | DampingStrength, p: CatParams) -> DiscordLambdas:
    """Closed-form lambdas for the damped cat state.

    Raises:
        InvalidStateError: If the radicand 1 - 4 ubar dbar d falls below -TOL.radicand
    """
    strength = d if isinstance(d, DampingStrength) else DampingStrength(float(d))
    x = p.ubar * strength.dbar * strength.d
    radicand = 1.0 - 4.0 * x
    if radicand < -TOL.radicand:
        raise InvalidStateError(f"radicand {radicand:.3e} is negative")
    root = math.sqrt(max(radicand, 0.0))
    return DiscordLambdas(
        l1=x,
        l2=x,
        l3=0.5 * (1.0 - 2.0 * x) + 0.5 * root,
        l4=0.5 * (1.0 - 2.0 * x) - 0.5 * root,
        l5=0.5 + 0.5 * root,
        l6=0.5 - 0.5 * root,
        l7=p.u + p.ubar * strength.d,
        l8=p.ubar * strength.dbar,
    )


def _snap(value: float) -> float:
    return 0.0 if abs(value) < TOL.discord_floor else value


def discord_from_lambdas(lam: DiscordLambdas) -> float:
    """sum_{1..4} l log2 l - sum_{5..8} l log2 l."""
    joint = entropy_of_spectrum((lam.l1, lam.l2, lam.l3, lam.l4))
    measured = entropy_of_spectrum((lam.l5, lam.l6, lam.l7, lam.l8))
    return _snap(measured - joint)


def _joint_spectrum(x: XStateEntries) -> tuple[float, float, float, float]:
    lam = xstate_lambdas(x)
    return (lam.l1, lam.l2, lam.l3, lam.l4)


def discord_sigma_z(x: XStateEntries) -> float:
    """Discord when sigma_z on A is optimal: H(populations) - S(rho)."""
    return _snap(entropy_of_spectrum(x.populations) - entropy_of_spectrum(_joint_spectrum(x)))


def select_discord_branch(x: XStateEntries) -> TheoremBranch:
    """Pick the optimal measurement of the X-state theorem.

    Raises:
        TheoremNotApplicableError: If neither condition holds
    """
    pops = [max(v, 0.0) for v in x.populations]
    coherence = abs(x.rho12) + abs(x.rho03)
    if abs(math.sqrt(pops[0] * pops[3]) - math.sqrt(pops[1] * pops[2])) <= coherence + TOL.theorem:
        return TheoremBranch.SIGMA_X
    if coherence**2 <= (pops[0] - pops[1]) * (pops[3] - pops[2]) + TOL.theorem:
        return TheoremBranch.SIGMA_Z
    raise TheoremNotApplicableError(
        "neither the sigma_x nor the sigma_z optimality condition holds"
    )


def discord_xstate(x: XStateEntries) -> float:
    """Closed-form discord (bits) of an X state, measurement on qubit A.

    Raises:
        TheoremNotApplicableError: If the optimal measurement is not known;
            callers fall back to discord_bruteforce
    """
    if select_discord_branch(x) is TheoremBranch.SIGMA_X:
        return discord_from_lambdas(xstate_lambdas(x))
    return discord_sigma_z(x)


def _entropy_terms(x: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    """Elementwise -x log2 x with 0 log 0 = 0."""
    x = np.clip(x, 0.0, None)
    out = np.zeros_like(x)
    positive = x > 0.0
    out[positive] = -x[positive] * np.log2(x[positive])
    return out


def _conditional_entropies(
    rho: DensityMatrix4, points: npt.NDArray[np.float64]
) -> npt.NDArray[np.float64]:
    """sum_k p_k S(rho_B|k) for projective measurements on A along (theta, phi_m)."""
    theta, phi_m = points[:, 0], points[:, 1]
    axis = np.stack(
        [np.sin(theta) * np.cos(phi_m), np.sin(theta) * np.sin(phi_m), np.cos(theta)], axis=1
    )
    n_sigma = np.einsum("ni,ijk->njk", axis, _PAULI_STACK)
    blocks = rho.matrix.reshape(2, 2, 2, 2)
    total = np.zeros(len(points))
    for sign in (1.0, -1.0):
        proj = 0.5 * (_I2[None, :, :] + sign * n_sigma)
        cond = np.einsum("nac,cbad->nbd", proj, blocks)
        a = cond[:, 0, 0].real
        b = cond[:, 1, 1].real
        trace = a + b
        spread = np.sqrt((a - b) ** 2 + 4.0 * np.abs(cond[:, 0, 1]) ** 2)
        total += (
            _entropy_terms(0.5 * (trace + spread))
            + _entropy_terms(0.5 * (trace - spread))
            - _entropy_terms(trace)
        )
    return total


def conditional_entropy(rho: DensityMatrix4, measurement: MeasurementBloch) -> float:
    """Average entropy of B after measuring A along the given axis."""
    point = np.array([[measurement.theta, measurement.phi_m]])
    return float(_conditional_entropies(rho, point)[0])


def discord_search(
    rho: DensityMatrix4, grid: tuple[int, int] = (181, 121), refine: bool = True
) -> tuple[SearchResult, MeasurementBloch]:
    """Minimize the discord over von Neumann measurements on A.

    Returns:
        The search result and the optimal measurement axis in canonical angles
    """
    base = von_neumann_entropy(partial_trace(rho, "A")) - von_neumann_entropy(rho)

    def objective(points: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        return base + _conditional_entropies(rho, points)

    axes = [
        np.linspace(0.0, math.pi, grid[0]),
        np.linspace(0.0, 2.0 * math.pi, grid[1], endpoint=False),
    ]
    result = grid_then_refine(objective, axes, maximize=False, refine=refine)
    best = MeasurementBloch.folded(*result.argbest)
    logger.debug(
        "discord search: %.12f at theta=%.6f phi_m=%.6f", result.value, best.theta, best.phi_m
    )
    snapped = SearchResult(
        _snap(result.value), (best.theta, best.phi_m), result.evaluations, result.refined
    )
    return snapped, best


def discord_bruteforce(
    rho: DensityMatrix4, grid: tuple[int, int] = (181, 121), refine: bool = True
) -> float:
    """Upper bound on the discord from an explicit measurement search."""
    return discord_search(rho, grid, refine)[0].value
