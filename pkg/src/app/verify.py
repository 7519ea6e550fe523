"""Self-verification suites: closed forms against oracles and module invariants."""

import logging
import math
import time
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field

import numpy as np

from src.app.schemas import FIG1_D_LIST, FIG2_D_LIST, Measure, SuiteResult, SuiteUsage
from src.physics.analysis import (
    advantage_window_concurrence,
    advantage_window_numeric,
    concurrence_closed,
    discord_closed,
    fef_closed,
    figure1_rows,
    figure2_rows,
    in_equality_region,
    optimize_measure,
    ordering_reversal_check,
    reversal_window,
    u_m_concurrence,
    unit_grid,
)
from src.physics.channel import (
    amplitude_damping_kraus,
    apply_local_pair,
    apply_single,
    compose_strengths,
)
from src.physics.family import CatParams, cat_state, decohered_cat, decohered_cat_asymmetric
from src.physics.measures import (
    SignRule,
    concurrence,
    det_sign,
    discord_lambdas,
    discord_search,
    discord_xstate,
    fef,
    fef_bruteforce,
    fef_star_upper,
    negativity,
    xstate_entries,
)
from src.physics.qmat import DensityMatrix4, hermitian_eigenvalues

logger = logging.getLogger(__name__)

PHASES = (0.0, math.pi / 3.0, math.pi)


@dataclass
class _Tracker:
    """Accumulates the largest discrepancy and the first failing point of a suite."""

    name: str
    threshold: float
    worst: float = 0.0
    failing: tuple[float, ...] | None = None
    checks: int = 0
    notes: list[str] = field(default_factory=list)

    def check(self, discrepancy: float, point: tuple[float, ...]) -> None:
        self.checks += 1
        if not discrepancy <= self.threshold and self.failing is None:
            self.failing = point
        self.worst = max(self.worst, discrepancy) if math.isfinite(discrepancy) else math.inf

    def require(self, ok: bool, point: tuple[float, ...], note: str) -> None:
        self.checks += 1
        if not ok and self.failing is None:
            self.failing = point
            self.notes.append(note)

    def result(self, started: float) -> SuiteResult:
        usage = SuiteUsage(duration_ms=(time.time() - started) * 1000, evaluations=self.checks)
        logger.info("suite %s: %d checks in %.0f ms", self.name, self.checks, usage.duration_ms)
        if self.failing is None:
            return SuiteResult(
                name=self.name,
                status="success",
                max_discrepancy=self.worst,
                threshold=self.threshold,
                usage=usage,
            )
        return SuiteResult(
            name=self.name,
            status="error",
            max_discrepancy=self.worst,
            threshold=self.threshold,
            message="; ".join(self.notes) or "discrepancy above threshold",
            failing_point=self.failing,
            error_code="VERIFICATION_FAILED",
            usage=usage,
        )


def _grid(step: float) -> list[float]:
    return [float(x) for x in unit_grid(step)]


def _points(
    step: float, phases: tuple[float, ...] = (0.0,)
) -> Iterator[tuple[float, float, float]]:
    for d in _grid(step):
        for u in _grid(step):
            for phi in phases:
                yield d, u, phi


class VerificationSuites:
    """All suites, sharing search grids, a tolerance override and an optional fault."""

    def __init__(
        self,
        tol: float | None = None,
        fault: str | None = None,
        fef_grid: int = 41,
        discord_grid: tuple[int, int] = (181, 121),
    ):
        """Initialize the suites.

        Args:
            tol: Replaces every suite's own threshold when given
            fault: "fef-sign" replaces the determinant sign rule by a constant +1
            fef_grid: Points per angle of the FEF overlap search
            discord_grid: (theta, phi) points of the discord measurement search
        """
        self.tol = tol
        self.fef_grid = fef_grid
        self.discord_grid = discord_grid
        self.sign: SignRule = (lambda _det: 1) if fault == "fef-sign" else det_sign

    def _tracker(self, name: str, declared: float) -> _Tracker:
        return _Tracker(name, self.tol if self.tol is not None else declared)

    def run_all(self) -> list[SuiteResult]:
        suites: list[Callable[[], SuiteResult]] = [
            self.channel,
            self.family,
            self.concurrence,
            self.optimal_weight,
            self.optimal_value,
            self.fef_anchors,
            self.fef_closed_form,
            self.fef_triple,
            self.fstar_equality,
            self.discord,
            self.discord_axis,
            self.discord_zero,
            self.esd,
            self.concurrence_window,
            self.ordering_reversal,
            self.phi_invariance,
            self.lambdas_spectrum,
            self.monotone,
            self.figures,
        ]
        return [suite() for suite in suites]

    def channel(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("channel", 1e-12)
        for d, u, phi in _points(0.05, PHASES):
            kraus = amplitude_damping_kraus(d)
            pure = DensityMatrix4.from_pure(cat_state(CatParams(u, phi)))
            simulated = apply_local_pair(pure, kraus, kraus)
            closed = decohered_cat(d, CatParams(u, phi))
            t.check(float(np.max(np.abs(simulated.matrix - closed.matrix))), (d, u, phi))
            excited = apply_single(np.diag([0.0, 1.0]).astype(np.complex128), kraus)
            t.check(abs(float(excited[0, 0].real) - d), (d, u, phi))
        for d1 in _grid(0.1):
            for d2 in _grid(0.1):
                rho = decohered_cat(0.0, CatParams(0.3, 0.7))
                k1, k2 = amplitude_damping_kraus(d1), amplitude_damping_kraus(d2)
                twice = apply_local_pair(apply_local_pair(rho, k1, k1), k2, k2)
                k12 = amplitude_damping_kraus(compose_strengths(d1, d2))
                once = apply_local_pair(rho, k12, k12)
                t.check(float(np.max(np.abs(twice.matrix - once.matrix))), (d1, d2))
        return t.result(started)

    def family(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("family", 1e-12)
        strengths = _grid(0.1)
        for da in strengths:
            for db in strengths:
                for u in _grid(0.1):
                    p = CatParams(u, math.pi / 3.0)
                    pure = DensityMatrix4.from_pure(cat_state(p))
                    simulated = apply_local_pair(
                        pure, amplitude_damping_kraus(da), amplitude_damping_kraus(db)
                    )
                    closed = decohered_cat_asymmetric(da, db, p)
                    t.check(float(np.max(np.abs(simulated.matrix - closed.matrix))), (da, db, u))
                    trace = abs(float(np.trace(closed.matrix).real) - 1.0)
                    t.check(trace, (da, db, u))
        return t.result(started)

    def concurrence(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("concurrence", 1e-10)
        for d, u, phi in _points(0.01, PHASES):
            rho = decohered_cat(d, CatParams(u, phi))
            t.check(abs(concurrence(rho) - concurrence_closed(d, u)), (d, u, phi))
        return t.result(started)

    def optimal_weight(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("optimal-weight", 1e-6)
        for d in [0.05 * k for k in range(1, 20)]:
            u_m, _ = u_m_concurrence(d)
            for measure in (Measure.CONCURRENCE, Measure.FEF):
                t.check(abs(optimize_measure(d, measure).u_star - u_m), (d,))
        return t.result(started)

    def optimal_value(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("optimal-value", 1e-9)
        for d in [0.05 * k for k in range(1, 20)]:
            _, c_max = u_m_concurrence(d)
            t.check(abs(optimize_measure(d, Measure.CONCURRENCE).value - c_max), (d,))
            t.check(abs(optimize_measure(d, Measure.FEF).value - (0.5 + 0.5 * c_max)), (d,))
        return t.result(started)

    def fef_anchors(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("fef-anchors", 1e-10)
        bell = decohered_cat(0.0, CatParams(0.5))
        product = decohered_cat(0.0, CatParams(1.0))
        t.check(abs(fef(bell, self.sign) - 1.0), (0.0, 0.5, 0.0))
        t.check(abs(fef(product, self.sign) - 0.5), (0.0, 1.0, 0.0))
        return t.result(started)

    def fef_closed_form(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("fef-closed", 1e-10)
        for d, u, phi in _points(0.01, PHASES):
            rho = decohered_cat(d, CatParams(u, phi))
            t.check(abs(fef(rho, self.sign) - fef_closed(d, u)), (d, u, phi))
        return t.result(started)

    def fef_triple(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("fef-triple", 1e-6)
        for d, u, phi in _points(0.05):
            rho = decohered_cat(d, CatParams(u, phi))
            brute = fef_bruteforce(rho, self.fef_grid)
            t.check(abs(fef(rho, self.sign) - brute), (d, u, phi))
            t.check(abs(fef_closed(d, u) - brute), (d, u, phi))
        return t.result(started)

    def fstar_equality(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("fstar-equality", 1e-10)
        for d, u, phi in _points(0.02):
            if not in_equality_region(d, u):
                continue
            rho = decohered_cat(d, CatParams(u, phi))
            t.check(abs(negativity(rho) - concurrence(rho)), (d, u, phi))
            t.check(abs(fef_star_upper(rho) - fef(rho, self.sign)), (d, u, phi))
        return t.result(started)

    def discord(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("discord", 1e-6)
        for d, u, phi in _points(0.05):
            rho = decohered_cat(d, CatParams(u, phi))
            search, _ = discord_search(rho, self.discord_grid)
            t.check(abs(discord_xstate(xstate_entries(rho)) - search.value), (d, u, phi))
        return t.result(started)

    def discord_axis(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("discord-axis", 0.02)
        interior = [0.05 * k for k in range(1, 20)]
        for d in interior:
            for u in interior:
                if abs(u - 0.5) < 1e-12 or discord_closed(d, u) < 1e-6:
                    continue
                rho = decohered_cat(d, CatParams(u))
                _, axis = discord_search(rho, self.discord_grid)
                t.check(abs(axis.theta - math.pi / 2.0), (d, u, 0.0))
        return t.result(started)

    def discord_zero(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("discord-zero", 0.0)
        for d, u, phi in _points(0.05):
            value = discord_xstate(xstate_entries(decohered_cat(d, CatParams(u, phi))))
            classical = u in (0.0, 1.0) or d == 1.0
            t.require(value >= 0.0, (d, u, phi), "negative discord")
            t.require((value <= 1e-9) == classical, (d, u, phi), "discord vanishing mismatch")
        return t.result(started)

    def esd(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("esd", 0.0)
        for d in [0.05 * k for k in range(1, 20)]:
            boundary = d * d / (1.0 + d * d)
            for u in _grid(0.005):
                if abs(u - boundary) > 0.05:
                    continue
                gap = math.sqrt(u / (1.0 - u)) - d
                if abs(gap) <= 1e-12:
                    continue
                c = concurrence(decohered_cat(d, CatParams(u)))
                if gap < 0.0:
                    t.require(c == 0.0, (d, u, 0.0), "nonzero concurrence inside the ESD region")
                else:
                    t.require(c > 0.0, (d, u, 0.0), "zero concurrence outside the ESD region")
        return t.result(started)

    def concurrence_window(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("concurrence-window", 1e-6)
        for d in FIG1_D_LIST:
            _, hi = advantage_window_concurrence(d)
            _, hi_numeric = advantage_window_numeric(d, Measure.CONCURRENCE)
            t.check(abs(hi - hi_numeric), (d,))
            t.check(abs(concurrence_closed(d, hi) - concurrence_closed(d, 0.5)), (d,))
        return t.result(started)

    def ordering_reversal(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("ordering-reversal", 0.0)
        for d in [0.05 * k for k in range(1, 20)]:
            lo, hi = reversal_window(d)
            u_prime = 0.5 * (lo + hi)
            report = ordering_reversal_check(d, u_prime)
            t.require(hi > lo and report.reversed, (d, u_prime), "no ordering reversal")
        return t.result(started)

    def phi_invariance(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("phi-invariance", 1e-10)
        phases = (0.0, math.pi / 3.0, math.pi, 1.5 * math.pi)
        for d in _grid(0.1):
            for u in _grid(0.1):
                values = []
                for phi in phases:
                    rho = decohered_cat(d, CatParams(u, phi))
                    values.append(
                        (
                            concurrence(rho),
                            negativity(rho),
                            fef(rho, self.sign),
                            discord_xstate(xstate_entries(rho)),
                        )
                    )
                base = np.array(values[0])
                for row, phi in zip(values[1:], phases[1:], strict=True):
                    t.check(float(np.max(np.abs(np.array(row) - base))), (d, u, phi))
        return t.result(started)

    def lambdas_spectrum(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("lambdas-spectrum", 1e-10)
        for d, u, phi in _points(0.05):
            lam = discord_lambdas(d, CatParams(u, phi))
            closed = sorted((lam.l1, lam.l2, lam.l3, lam.l4), reverse=True)
            numeric = hermitian_eigenvalues(decohered_cat(d, CatParams(u, phi)))
            t.check(float(np.max(np.abs(np.array(closed) - np.array(numeric)))), (d, u, phi))
        return t.result(started)

    def monotone(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("monotone", 0.0)
        for d, u, phi in _points(0.05):
            for closed in (concurrence_closed, fef_closed, discord_closed):
                t.require(
                    closed(d, u) <= closed(0.0, u) + 1e-12,
                    (d, u, phi),
                    f"{closed.__name__} increased under damping",
                )
        return t.result(started)

    def figures(self) -> SuiteResult:
        started = time.time()
        t = self._tracker("figures", 0.0)
        step = 0.005
        for d in FIG1_D_LIST:
            rows = figure1_rows([d], step)
            peak = max(rows, key=lambda r: r.c_residual_u_high)
            target = 1.0 / math.sqrt(1.0 + d * d)
            t.require(abs(peak.c_initial - target) <= step + 1e-12, (d,), "figure1 peak misplaced")
            t.require(
                rows[-1].c_residual_u_high < peak.c_residual_u_high, (d,), "figure1 monotonic"
            )
        for d in FIG2_D_LIST:
            rows = figure2_rows([d], step)
            c_peak = max(rows, key=lambda r: r.concurrence).u
            d_peak = max(rows, key=lambda r: r.discord).u
            t.require(c_peak > 0.5 and d_peak > 0.5, (d,), "figure2 peak at or left of 1/2")
            t.require(abs(c_peak - d_peak) > 1e-12, (d,), "figure2 peaks coincide")
        return t.result(started)


def run_verification(
    tol: float | None = None,
    fault: str | None = None,
    fef_grid: int = 41,
    discord_grid: tuple[int, int] = (181, 121),
) -> list[SuiteResult]:
    """Run every suite and return their results in a fixed order."""
    return VerificationSuites(tol, fault, fef_grid, discord_grid).run_all()
