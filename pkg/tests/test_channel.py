"""Tests for amplitude-damping channels."""

import numpy as np
import pytest

from src.physics.channel import (
    DampingStrength,
    KrausSet,
    amplitude_damping_kraus,
    apply_local_pair,
    apply_single,
    compose_strengths,
    identity_kraus,
)
from src.physics.errors import InvalidChannelError, OutOfRangeError
from src.physics.family import CatParams, decohered_cat
from src.physics.qmat import DensityMatrix4, allclose, projector

GROUND = np.diag([1.0, 0.0]).astype(np.complex128)
EXCITED = np.diag([0.0, 1.0]).astype(np.complex128)


def test_damping_strength_range() -> None:
    """Test strengths outside [0, 1] are rejected with the field named."""
    assert DampingStrength(0.3).dbar == pytest.approx(0.7)
    with pytest.raises(OutOfRangeError) as info:
        DampingStrength(1.5)
    assert info.value.field == "d"
    with pytest.raises(ValueError):
        DampingStrength(float("nan"))


def test_kraus_operators_at_known_strengths() -> None:
    """Test the Kraus pair at d = 0, 0.36 and 1."""
    m0, m1 = amplitude_damping_kraus(0.0).operators
    assert allclose(m0, np.eye(2))
    assert allclose(m1, np.zeros((2, 2)))
    m0, m1 = amplitude_damping_kraus(0.36).operators
    assert m0[1, 1].real == pytest.approx(0.8)
    assert m1[0, 1].real == pytest.approx(0.6)
    m0, m1 = amplitude_damping_kraus(1.0).operators
    assert allclose(m0, np.diag([1.0, 0.0]))


def test_incomplete_kraus_set_rejected() -> None:
    """Test a set whose M^+ M do not sum to I raises."""
    with pytest.raises(InvalidChannelError):
        KrausSet((0.5 * np.eye(2, dtype=np.complex128),))
    with pytest.raises(InvalidChannelError):
        KrausSet(())


def test_apply_single() -> None:
    """Test ground state is fixed and excited populations decay."""
    assert allclose(apply_single(GROUND, amplitude_damping_kraus(0.7)), GROUND)
    assert allclose(apply_single(EXCITED, amplitude_damping_kraus(1.0)), GROUND)
    assert allclose(apply_single(EXCITED, amplitude_damping_kraus(0.3)), np.diag([0.3, 0.7]))


def test_apply_local_pair_identity_and_full_decay() -> None:
    """Test the identity pair leaves a state unchanged and full decay gives |00>."""
    rho = decohered_cat(0.2, CatParams(0.4, 1.0))
    assert apply_local_pair(rho, identity_kraus(), identity_kraus()).isclose(rho)
    eleven = DensityMatrix4(projector(np.array([0, 0, 0, 1], dtype=np.complex128)))
    full = amplitude_damping_kraus(1.0)
    decayed = apply_local_pair(eleven, full, full)
    assert allclose(decayed.matrix, np.diag([1.0, 0.0, 0.0, 0.0]))


def test_compose_strengths() -> None:
    """Test two damping steps compose into one."""
    assert compose_strengths(0.3, 0.5) == pytest.approx(0.65)
    rho = decohered_cat(0.0, CatParams(0.3, 0.7))
    k1, k2 = amplitude_damping_kraus(0.3), amplitude_damping_kraus(0.5)
    twice = apply_local_pair(apply_local_pair(rho, k1, k1), k2, k2)
    k12 = amplitude_damping_kraus(compose_strengths(0.3, 0.5))
    assert twice.isclose(apply_local_pair(rho, k12, k12), atol=1e-12)
