"""Numerical tolerances shared by every module."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Single tuning point for every numerical comparison."""

    compare: float = 1e-9
    hermitian: float = 1e-10
    density_hermitian: float = 1e-12
    density_trace: float = 1e-12
    psd: float = 1e-10
    kraus: float = 1e-12
    norm: float = 1e-12
    sign_dead_band: float = 1e-12
    rank: float = 1e-14
    xstate: float = 1e-10
    radicand: float = 1e-12
    theorem: float = 1e-12
    discord_floor: float = 1e-12
    refine_step: float = 1e-9
    optimizer: float = 1e-8
    coarse_step: float = 1e-3


TOL = Tolerances()
