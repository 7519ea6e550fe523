"""Cat-state inputs sqrt(u)|00> + sqrt(1-u) e^{i phi}|11> and their damped forms."""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from src.physics.channel import DampingStrength
from src.physics.errors import OutOfRangeError
from src.physics.qmat import DensityMatrix4, PureState4


@dataclass(frozen=True)
class CatParams:
    """Weight u of |00> and relative phase phi (radians) of |11>."""

    u: float
    phi: float = 0.0
    ubar: float = field(init=False)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.u) and 0.0 <= self.u <= 1.0):
            raise OutOfRangeError("u", self.u, "[0, 1]")
        if not math.isfinite(self.phi):
            raise OutOfRangeError("phi", self.phi, "finite reals")
        object.__setattr__(self, "phi", self.phi % (2.0 * math.pi))
        object.__setattr__(self, "ubar", 1.0 - self.u)


def _strength(d: float | DampingStrength) -> DampingStrength:
    return d if isinstance(d, DampingStrength) else DampingStrength(float(d))


def cat_state(p: CatParams) -> PureState4:
    """Amplitudes (sqrt(u), 0, 0, sqrt(1-u) e^{i phi})."""
    return np.array(
        [math.sqrt(p.u), 0.0, 0.0, math.sqrt(p.ubar) * cmath.exp(1j * p.phi)],
        dtype=np.complex128,
    )


def initial_concurrence(p: CatParams) -> float:
    """Concurrence 2 sqrt(u (1-u)) of the undamped cat state."""
    return 2.0 * math.sqrt(p.u * p.ubar)


def decohered_cat(d: float | DampingStrength, p: CatParams) -> DensityMatrix4:
    """Closed-form X state left after equal amplitude damping on both qubits."""
    return decohered_cat_asymmetric(d, d, p)


def decohered_cat_asymmetric(
    da: float | DampingStrength, db: float | DampingStrength, p: CatParams
) -> DensityMatrix4:
    """Closed-form X state for damping strengths da on qubit A and db on qubit B.

    Args:
        da: Damping strength of the first qubit
        db: Damping strength of the second qubit
        p: Cat-state parameters

    Returns:
        Density matrix with populations (u + ubar da db, ubar da dbar_b,
        ubar dbar_a db, ubar dbar_a dbar_b) and anti-diagonal corners
        sqrt(dbar_a dbar_b u ubar) e^{-/+ i phi}
    """
    a, b = _strength(da), _strength(db)
    corner = math.sqrt(a.dbar * b.dbar) * math.sqrt(p.u * p.ubar)
    rho = np.zeros((4, 4), dtype=np.complex128)
    rho[0, 0] = p.u + p.ubar * a.d * b.d
    rho[1, 1] = p.ubar * a.d * b.dbar
    rho[2, 2] = p.ubar * a.dbar * b.d
    rho[3, 3] = p.ubar * a.dbar * b.dbar
    rho[0, 3] = corner * cmath.exp(-1j * p.phi)
    rho[3, 0] = corner * cmath.exp(1j * p.phi)
    return DensityMatrix4(rho)
