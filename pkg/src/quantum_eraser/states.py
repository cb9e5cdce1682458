"""Complex-amplitude state algebra for the two-photon eraser.

Hybrid kets live on idler polarization x signal polarization x signal slit
path. Amplitudes are stored as a ``(2, 2, 2)`` complex array indexed
``[idler, signal, path]`` with polarization index 0 = H, 1 = V and path
index 0 = upper slit (+), 1 = lower slit (-). Every module uses this order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12
ZERO_PROJECTION = 1e-15
PSD_FLOOR = -1e-12

H = np.array([1.0, 0.0], dtype=complex)
V = np.array([0.0, 1.0], dtype=complex)
PLUS = np.array([1.0, 0.0], dtype=complex)
MINUS = np.array([0.0, 1.0], dtype=complex)


class OrthogonalProjectionError(ValueError):
    """Raised when a projection has (numerically) zero probability."""


def _check_finite(arr: np.ndarray) -> None:
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite amplitude")


@dataclass(frozen=True)
class HybridKet:
    amplitudes: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(2, 2, 2)
        _check_finite(amps)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        if self.normalized and abs(self.norm_squared() - 1.0) > NORM_TOL:
            raise ValueError("ket flagged normalized but norm is %r" % self.norm_squared())

    @classmethod
    def product(cls, idler, signal, path) -> "HybridKet":
        return cls(np.einsum("i,j,k->ijk", idler, signal, path))

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def __add__(self, other: "HybridKet") -> "HybridKet":
        return HybridKet(self.amplitudes + other.amplitudes)

    def __sub__(self, other: "HybridKet") -> "HybridKet":
        return HybridKet(self.amplitudes - other.amplitudes)

    def __mul__(self, scalar) -> "HybridKet":
        return HybridKet(self.amplitudes * scalar)

    __rmul__ = __mul__

    def flat(self) -> np.ndarray:
        return self.amplitudes.reshape(8)


@dataclass(frozen=True)
class PolarizationDensity:
    """2x2 density operator in the {H, V} basis."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex).reshape(2, 2)
        _check_finite(m)
        if np.max(np.abs(m - m.conj().T)) > NORM_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > NORM_TOL:
            raise ValueError("density matrix trace is %r, expected 1" % np.trace(m).real)
        if np.min(np.linalg.eigvalsh(m)) < PSD_FLOOR:
            raise ValueError("density matrix is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def polarization_ket(theta: float, phi: float = 0.0) -> np.ndarray:
    """cos(theta)|H> + exp(i phi) sin(theta)|V>."""
    return np.array([np.cos(theta), np.exp(1j * phi) * np.sin(theta)], dtype=complex)


def normalize(k: HybridKet) -> HybridKet:
    n2 = k.norm_squared()
    if n2 <= 0.0:
        raise ValueError("null state")
    return HybridKet(k.amplitudes / np.sqrt(n2), normalized=True)


def _require_normalized_ket(v: np.ndarray) -> None:
    if abs(np.vdot(v, v).real - 1.0) > NORM_TOL:
        raise ValueError("polarization ket is not normalized")


def density_from_ket(k) -> PolarizationDensity:
    k = np.asarray(k, dtype=complex)
    _require_normalized_ket(k)
    return PolarizationDensity(np.outer(k, k.conj()))


def purity(rho: PolarizationDensity) -> float:
    m = rho.matrix
    return float(np.trace(m @ m).real)


def project_idler(k: HybridKet, onto) -> tuple[np.ndarray, float]:
    """Project the idler photon onto ``onto``.

    Returns the renormalized conditional signal state, shaped
    ``[signal, path]``, and the projection probability.
    """
    onto = np.asarray(onto, dtype=complex)
    _require_normalized_ket(onto)
    if abs(k.norm_squared() - 1.0) > NORM_TOL:
        raise ValueError("hybrid ket is not normalized")
    conditional = np.einsum("i,ijk->jk", onto.conj(), k.amplitudes)
    prob = float(np.sum(np.abs(conditional) ** 2))
    if prob < ZERO_PROJECTION:
        raise OrthogonalProjectionError("orthogonal projection")
    return conditional / np.sqrt(prob), prob


def fidelity(a, b) -> float:
    """|<a|b>| for two normalized vectors of any shape; 1 means equal up to global phase."""
    a = np.ravel(np.asarray(a, dtype=complex))
    b = np.ravel(np.asarray(b, dtype=complex))
    return float(abs(np.vdot(a / np.linalg.norm(a), b / np.linalg.norm(b))))


def path_coherence(signal_state: np.ndarray) -> complex:
    """Off-diagonal <+|rho_path|-> after tracing out signal polarization."""
    s = np.asarray(signal_state, dtype=complex).reshape(2, 2)
    rho_path = s.T @ s.conj()
    return complex(rho_path[0, 1])
