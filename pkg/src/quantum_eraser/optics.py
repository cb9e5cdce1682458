"""Jones-calculus elements and the birefringent double slit.

Convention: a retarder with fast axis at ``angle`` (radians, measured from H
towards V) is ``Rot(angle) @ diag(1, exp(i*retardance)) @ Rot(-angle)``.
With it, ``hwp(pi/8)`` takes H to P exactly and ``qwp(pi/4)`` takes H to R
up to a global phase exp(i*pi/4).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .states import H, MINUS, PLUS, V, HybridKet

SQRT2 = np.sqrt(2.0)

_S = 1 / SQRT2
P = np.array([_S, _S], dtype=complex)
M = np.array([_S, -_S], dtype=complex)
R = np.array([_S, -1j * _S])
L = np.array([_S, 1j * _S])


class NamedBasis(NamedTuple):
    label: str
    first: np.ndarray
    second: np.ndarray


_BASES = {
    "HV": (H, V),
    "PM": (P, M),
    "LR": (L, R),
}

_KETS = {"H": H, "V": V, "P": P, "M": M, "L": L, "R": R}


def basis(label: str) -> NamedBasis:
    try:
        first, second = _BASES[label.upper()]
    except KeyError:
        raise ValueError(f"unknown basis label {label!r}; expected one of {sorted(_BASES)}") from None
    return NamedBasis(label.upper(), first.copy(), second.copy())


def named_ket(label: str) -> np.ndarray:
    try:
        return _KETS[label.upper()].copy()
    except KeyError:
        raise ValueError(f"unknown polarization label {label!r}") from None


def rotation(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]], dtype=complex)


def retarder(angle: float, retardance: float) -> np.ndarray:
    return rotation(angle) @ np.diag([1.0, np.exp(1j * retardance)]) @ rotation(-angle)


def hwp(angle: float) -> np.ndarray:
    """Half-wave plate; reflects linear polarization about the fast axis (beta -> 2*angle - beta)."""
    return retarder(angle, np.pi)


def qwp(angle: float) -> np.ndarray:
    return retarder(angle, np.pi / 2)


def polarizer(angle: float) -> np.ndarray:
    e = np.array([np.cos(angle), np.sin(angle)], dtype=complex)
    return np.outer(e, e.conj())


# Fast axes of the plates behind the upper (+) and lower (-) slit.
# They are orthogonal; this choice carries the source's relative phase i
# straight into the printed birefringent-slit state without any extra plate.
UPPER_SLIT_QWP = -np.pi / 4
LOWER_SLIT_QWP = np.pi / 4

# The idler plate's H -> M, V -> -P action (which is what the downstream
# coincidence formulas require) is a half-wave plate at -pi/8 in the
# convention above; a plate at +pi/8 would give H -> P, V -> M instead.
IDLER_HWP_ANGLE = -np.pi / 8


def source_state(phase: complex = 1j) -> HybridKet:
    """Polarization-entangled pair after the double slit, (|H_i V_s> + phase|V_i H_s>) x (|+> + |->), normalized."""
    path = (PLUS + MINUS) / SQRT2
    k = HybridKet.product(H, V, path) + HybridKet.product(V, H, path) * phase
    return HybridKet(k.amplitudes / SQRT2, normalized=abs(phase) == 1)


def apply_signal(k: HybridKet, upper: np.ndarray, lower: np.ndarray) -> HybridKet:
    """Apply a path-conditional Jones matrix to the signal photon."""
    amps = k.amplitudes
    out = np.empty_like(amps)
    out[:, :, 0] = amps[:, :, 0] @ upper.T
    out[:, :, 1] = amps[:, :, 1] @ lower.T
    return HybridKet(out, normalized=k.normalized)


def apply_idler(k: HybridKet, jones: np.ndarray) -> HybridKet:
    return HybridKet(np.einsum("ij,jkl->ikl", jones, k.amplitudes), normalized=k.normalized)


def birefringent_double_slit(k: HybridKet) -> HybridKet:
    return apply_signal(k, qwp(UPPER_SLIT_QWP), qwp(LOWER_SLIT_QWP))


def birefringent_double_slit_adjoint(k: HybridKet) -> HybridKet:
    return apply_signal(k, qwp(UPPER_SLIT_QWP).conj().T, qwp(LOWER_SLIT_QWP).conj().T)


def apply_idler_hwp_pi8(k: HybridKet) -> HybridKet:
    return apply_idler(k, hwp(IDLER_HWP_ANGLE))


def marked_state() -> HybridKet:
    """Pair state right after the birefringent double slit."""
    return birefringent_double_slit(source_state())


def erased_state() -> HybridKet:
    """Marked state with the idler half-wave plate applied (input to the interferometer)."""
    return apply_idler_hwp_pi8(marked_state())
