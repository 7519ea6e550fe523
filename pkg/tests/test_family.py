"""Tests for cat-state inputs and their damped forms."""

import math

import numpy as np
import pytest

from src.physics.channel import amplitude_damping_kraus, apply_local_pair
from src.physics.errors import OutOfRangeError
from src.physics.family import (
    CatParams,
    cat_state,
    decohered_cat,
    decohered_cat_asymmetric,
    initial_concurrence,
)
from src.physics.qmat import DensityMatrix4, allclose


def test_cat_params_validation() -> None:
    """Test u bounds and phase reduction."""
    p = CatParams(0.25, 2.0 * math.pi + 1.0)
    assert p.phi == pytest.approx(1.0)
    assert p.ubar == pytest.approx(0.75)
    with pytest.raises(OutOfRangeError):
        CatParams(1.5)
    with pytest.raises(OutOfRangeError):
        CatParams(0.5, float("inf"))


def test_cat_state_amplitudes() -> None:
    """Test u = 1 is |00> and u = 0.9, phi = pi has a negative |11> amplitude."""
    assert allclose(cat_state(CatParams(1.0)).reshape(4, 1), np.array([[1], [0], [0], [0]]))
    psi = cat_state(CatParams(0.9, math.pi))
    assert psi[0].real == pytest.approx(math.sqrt(0.9))
    assert psi[3].real == pytest.approx(-math.sqrt(0.1))
    assert float(np.linalg.norm(psi)) == pytest.approx(1.0)


def test_initial_concurrence() -> None:
    """Test 2 sqrt(u (1-u)) at a few weights."""
    assert initial_concurrence(CatParams(0.5)) == pytest.approx(1.0)
    assert initial_concurrence(CatParams(0.0)) == 0.0
    assert initial_concurrence(CatParams(0.2)) == pytest.approx(0.8)
    assert initial_concurrence(CatParams(0.9, math.pi)) == pytest.approx(0.6)


def test_decohered_cat_worked_example() -> None:
    """Test the damped Bell state at d = 0.5."""
    rho = decohered_cat(0.5, CatParams(0.5))
    expected = np.diag([0.625, 0.125, 0.125, 0.125]).astype(np.complex128)
    expected[0, 3] = expected[3, 0] = 0.25
    assert allclose(rho.matrix, expected, atol=1e-12)


def test_decohered_cat_limits() -> None:
    """Test d = 0 keeps the pure state and d = 1 leaves |00>."""
    p = CatParams(0.3, 0.8)
    pure = DensityMatrix4.from_pure(cat_state(p))
    assert decohered_cat(0.0, p).isclose(pure, atol=1e-12)
    assert allclose(decohered_cat(1.0, p).matrix, np.diag([1.0, 0.0, 0.0, 0.0]))


@pytest.mark.parametrize("d,u,phi", [(0.5, 0.5, 0.0), (0.2, 0.7, 1.3), (0.9, 0.1, math.pi)])
def test_decohered_cat_matches_kraus_path(d: float, u: float, phi: float) -> None:
    """Test the closed form agrees with explicit Kraus application."""
    p = CatParams(u, phi)
    k = amplitude_damping_kraus(d)
    simulated = apply_local_pair(DensityMatrix4.from_pure(cat_state(p)), k, k)
    assert simulated.isclose(decohered_cat(d, p), atol=1e-12)


def test_asymmetric_damping_matches_kraus_path() -> None:
    """Test distinct strengths on the two qubits."""
    p = CatParams(0.6, 0.4)
    simulated = apply_local_pair(
        DensityMatrix4.from_pure(cat_state(p)),
        amplitude_damping_kraus(0.2),
        amplitude_damping_kraus(0.7),
    )
    closed = decohered_cat_asymmetric(0.2, 0.7, p)
    assert simulated.isclose(closed, atol=1e-12)
    assert decohered_cat_asymmetric(0.4, 0.4, p).isclose(decohered_cat(0.4, p), atol=0.0)
