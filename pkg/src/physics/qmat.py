"""Fixed-size complex linear algebra for one- and two-qubit operators."""

from collections.abc import Iterable
from dataclasses import dataclass
from typing import Literal

import numpy as np
import numpy.typing as npt

from src.physics.constants import TOL
from src.physics.errors import InvalidStateError, NotHermitianError

ComplexMatrix2 = npt.NDArray[np.complex128]
ComplexMatrix4 = npt.NDArray[np.complex128]
RealMatrix3 = npt.NDArray[np.float64]
PureState4 = npt.NDArray[np.complex128]

IDENTITY_2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True, eq=False)
class DensityMatrix4:
    """Validated two-qubit density matrix in the basis |00>, |01>, |10>, |11>."""

    matrix: ComplexMatrix4

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (4, 4):
            raise InvalidStateError(f"expected a 4x4 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidStateError("matrix has non-finite entries")
        asymmetry = float(np.max(np.abs(m - m.conj().T)))
        if asymmetry > TOL.density_hermitian:
            raise InvalidStateError(f"not Hermitian (asymmetry {asymmetry:.3e})")
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > TOL.density_trace:
            raise InvalidStateError(f"trace {trace.real:.15f} differs from 1")
        lowest = float(np.linalg.eigvalsh(m)[0])
        if lowest < -TOL.psd:
            raise InvalidStateError(f"negative eigenvalue {lowest:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_pure(cls, psi: PureState4) -> "DensityMatrix4":
        """Build |psi><psi| from a normalized 4-vector."""
        return cls(projector(psi))

    @property
    def spectrum(self) -> list[float]:
        """Eigenvalues, descending."""
        return hermitian_eigenvalues(self.matrix)

    def isclose(self, other: "DensityMatrix4", atol: float = TOL.compare) -> bool:
        """Entrywise comparison with an absolute tolerance."""
        return bool(np.allclose(self.matrix, other.matrix, rtol=0.0, atol=atol))


MatrixLike = DensityMatrix4 | npt.NDArray[np.complex128]


def as_array(m: MatrixLike) -> npt.NDArray[np.complex128]:
    """Unwrap a DensityMatrix4 or coerce an array to complex128."""
    if isinstance(m, DensityMatrix4):
        return m.matrix
    return np.asarray(m, dtype=np.complex128)


def allclose(a: MatrixLike, b: MatrixLike, atol: float = TOL.compare) -> bool:
    """Absolute-tolerance equality used by every matrix comparison."""
    return bool(np.allclose(as_array(a), as_array(b), rtol=0.0, atol=atol))


def dagger(m: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
    """Conjugate transpose."""
    return np.asarray(m, dtype=np.complex128).conj().T


def kron(a: ComplexMatrix2, b: ComplexMatrix2) -> ComplexMatrix4:
    """Kronecker product, a[0, 0] * b in the top-left block."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def projector(psi: PureState4) -> ComplexMatrix4:
    """|psi><psi| for a normalized vector."""
    v = np.asarray(psi, dtype=np.complex128).reshape(-1)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > TOL.norm:
        raise InvalidStateError(f"state norm {norm:.15f} differs from 1")
    return np.outer(v, v.conj())


def hermitian_eigenvalues(h: MatrixLike, tol: float = TOL.hermitian) -> list[float]:
    """Real eigenvalues of a Hermitian matrix, sorted descending.

    Args:
        h: Hermitian matrix (2x2 or 4x4)
        tol: Largest accepted entrywise asymmetry |h - h^+|

    Returns:
        Eigenvalues in descending order

    Raises:
        NotHermitianError: If the asymmetry exceeds `tol`
    """
    m = as_array(h)
    asymmetry = float(np.max(np.abs(m - m.conj().T)))
    if asymmetry > tol:
        raise NotHermitianError(f"asymmetry {asymmetry:.3e} exceeds {tol:.1e}")
    values = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    return [float(v) for v in values[::-1]]


def singular_values_3(t: RealMatrix3) -> list[float]:
    """Singular values of a real 3x3 matrix, descending."""
    values = np.linalg.svd(np.asarray(t, dtype=np.float64), compute_uv=False)
    return [max(float(v), 0.0) for v in values]


def partial_transpose_b(rho: MatrixLike) -> ComplexMatrix4:
    """Transpose the second-qubit indices of a two-qubit operator."""
    m = as_array(rho).reshape(2, 2, 2, 2)
    return m.transpose(0, 3, 2, 1).reshape(4, 4)


def partial_trace(rho: MatrixLike, keep: Literal["A", "B"]) -> ComplexMatrix2:
    """Reduced single-qubit operator of the kept subsystem."""
    m = as_array(rho).reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ajbj->ab", m)
    return np.einsum("iaib->ab", m)


def entropy_of_spectrum(values: Iterable[float]) -> float:
    """Shannon entropy in bits of an eigenvalue list, with 0 log 0 = 0.

    Raises:
        InvalidStateError: If a value lies below -TOL.psd
    """
    spectrum = np.asarray(list(values), dtype=np.float64)
    if spectrum.size and float(spectrum.min()) < -TOL.psd:
        raise InvalidStateError(f"negative eigenvalue {float(spectrum.min()):.3e}")
    spectrum = np.clip(spectrum, 0.0, 1.0)
    positive = spectrum[spectrum > 0.0]
    return 0.0 - float(np.sum(positive * np.log2(positive)))


def von_neumann_entropy(rho: MatrixLike) -> float:
    """S(rho) = -Tr(rho log2 rho) of a one- or two-qubit density matrix."""
    return entropy_of_spectrum(hermitian_eigenvalues(rho))
