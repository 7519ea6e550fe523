"""Amplitude-damping Kraus sets and local channel application."""

import math
from dataclasses import dataclass, field

import numpy as np

from src.physics.constants import TOL
from src.physics.errors import InvalidChannelError, OutOfRangeError
from src.physics.qmat import (
    IDENTITY_2,
    ComplexMatrix2,
    DensityMatrix4,
    dagger,
    kron,
)


@dataclass(frozen=True)
class DampingStrength:
    """Decay probability d of |1> -> |0>, with dbar = 1 - d stored alongside."""

    d: float
    dbar: float = field(init=False)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.d) and 0.0 <= self.d <= 1.0):
            raise OutOfRangeError("d", self.d, "[0, 1]")
        object.__setattr__(self, "dbar", 1.0 - self.d)


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Ordered Kraus operators of a trace-preserving single-qubit channel."""

    operators: tuple[ComplexMatrix2, ...]

    def __post_init__(self) -> None:
        ops = tuple(np.asarray(op, dtype=np.complex128) for op in self.operators)
        if not ops or any(op.shape != (2, 2) for op in ops):
            raise InvalidChannelError("expected a non-empty list of 2x2 operators")
        completeness = sum((dagger(op) @ op for op in ops), np.zeros((2, 2), dtype=np.complex128))
        deviation = float(np.max(np.abs(completeness - IDENTITY_2)))
        if deviation > TOL.kraus:
            raise InvalidChannelError(f"sum of M^+ M deviates from I by {deviation:.3e}")
        object.__setattr__(self, "operators", ops)


def _as_strength(d: float | DampingStrength) -> DampingStrength:
    return d if isinstance(d, DampingStrength) else DampingStrength(float(d))


def identity_kraus() -> KrausSet:
    """The noiseless channel {I}."""
    return KrausSet((IDENTITY_2,))


def amplitude_damping_kraus(d: float | DampingStrength) -> KrausSet:
    """Kraus pair M0 = diag(1, sqrt(1-d)), M1 = sqrt(d)|0><1|.

    Raises:
        OutOfRangeError: If d lies outside [0, 1]
    """
    strength = _as_strength(d)
    m0 = np.array([[1.0, 0.0], [0.0, math.sqrt(strength.dbar)]], dtype=np.complex128)
    m1 = np.array([[0.0, math.sqrt(strength.d)], [0.0, 0.0]], dtype=np.complex128)
    return KrausSet((m0, m1))


def compose_strengths(d1: float, d2: float) -> float:
    """Strength of damping by d1 followed by d2."""
    first, second = DampingStrength(d1), DampingStrength(d2)
    return 1.0 - first.dbar * second.dbar


def apply_single(rho: ComplexMatrix2, k: KrausSet) -> ComplexMatrix2:
    """Apply a single-qubit channel: sum_j M_j rho M_j^+."""
    m = np.asarray(rho, dtype=np.complex128)
    return sum((op @ m @ dagger(op) for op in k.operators), np.zeros((2, 2), dtype=np.complex128))


def apply_local_pair(rho: DensityMatrix4, ka: KrausSet, kb: KrausSet) -> DensityMatrix4:
    """Apply independent local channels: sum_jk (M_j x M_k) rho (M_j x M_k)^+.

    The two Kraus sets may differ, so asymmetric damping goes through the
    same path as the symmetric case.
    """
    out = np.zeros((4, 4), dtype=np.complex128)
    for ma in ka.operators:
        for mb in kb.operators:
            local = kron(ma, mb)
            out += local @ rho.matrix @ dagger(local)
    # Round-off can leave ~1e-17 asymmetry; restore exact Hermiticity.
    return DensityMatrix4(0.5 * (out + dagger(out)))
