"""Paraxial propagation of the signal photon from the double slit to the detector plane.

Lengths follow the slit-state convention: ``a`` is the slit half-width,
``d`` the half-separation (slits centred at +/-d), ``b`` the detector-slit
half-width and ``L`` the slit-to-detector distance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

# Largest d*max(a, b)/(2 alpha) accepted by the far-field detected amplitude.
FRAUNHOFER_LIMIT = 0.5


class FraunhoferError(ValueError):
    pass


def sinc(u):
    """Unnormalized sinc, sin(u)/u with sinc(0) = 1."""
    return np.sinc(np.asarray(u, dtype=float) / np.pi)


@dataclass(frozen=True)
class SlitGeometry:
    a: float
    d: float
    b: float
    L: float
    wavelength: float

    def __post_init__(self):
        for name in ("a", "d", "b", "L", "wavelength"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not self.d > self.a:
            raise ValueError("slits overlap: need d > a")

    @classmethod
    def from_experiment(cls, slit_width, center_separation, detector_width, L, wavelength):
        """Build from full widths and centre-to-centre separation."""
        return cls(slit_width / 2, center_separation / 2, detector_width / 2, L, wavelength)

    @property
    def k(self) -> float:
        return 2 * np.pi / self.wavelength

    @property
    def alpha(self) -> float:
        return self.L / (2 * self.k)

    @property
    def fraunhofer_parameter(self) -> float:
        return self.d * max(self.a, self.b) / (2 * self.alpha)

    def epsilon_x(self, x):
        """Transverse path difference 2xd/L in wavelengths."""
        return 2 * np.asarray(x, dtype=float) * self.d / (self.L * self.wavelength)

    def envelope(self, x):
        return sinc(np.asarray(x, dtype=float) * self.a / (2 * self.alpha)) ** 2

    @property
    def fringe_period(self) -> float:
        return self.wavelength * self.L / (2 * self.d)

    @property
    def first_envelope_zero(self) -> float:
        return self.wavelength * self.L / (2 * self.a)


@dataclass(frozen=True)
class SlitAmplitudes:
    w_plus: complex
    w_minus: complex

    def __post_init__(self):
        if abs(abs(self.w_plus) ** 2 + abs(self.w_minus) ** 2 - 1.0) > 1e-12:
            raise ValueError("|W+|^2 + |W-|^2 must equal 1")


SYMMETRIC = SlitAmplitudes(1 / np.sqrt(2), 1 / np.sqrt(2))


@dataclass(frozen=True)
class PatternSample:
    x: float
    epsilon_x: float
    envelope: float
    coincidence: float
    normalized: Optional[float] = None


def slit_mode_amplitude(q, which: str, g: SlitGeometry):
    """<q|+-> = sqrt(a/pi) exp(-+i d q) sinc(q a); unit norm over q."""
    sign = {"+": -1.0, "-": 1.0}[which]
    q = np.asarray(q, dtype=float)
    return np.sqrt(g.a / np.pi) * np.exp(1j * sign * g.d * q) * sinc(q * g.a)


def far_field_F(q, w: SlitAmplitudes, g: SlitGeometry):
    q = np.asarray(q, dtype=float)
    return (
        np.exp(-1j * q**2 * g.alpha)
        * sinc(q * g.a)
        * (w.w_plus * np.exp(-1j * q * g.d) + w.w_minus * np.exp(1j * q * g.d))
    )


def check_fraunhofer(g: SlitGeometry) -> None:
    if g.fraunhofer_parameter >= FRAUNHOFER_LIMIT:
        raise FraunhoferError(
            f"beyond Fraunhofer approximation: d*max(a,b)/(2 alpha) = {g.fraunhofer_parameter:.3g}"
        )


def detected_amplitude(x, w: SlitAmplitudes, g: SlitGeometry):
    """Far-field amplitude at detector position ``x``.

    Returns ``(amplitude, envelope, epsilon_x)``; all three broadcast over ``x``.
    """
    check_fraunhofer(g)
    eps_x = g.epsilon_x(x)
    phase = np.pi * eps_x
    amp = (w.w_plus * np.exp(-1j * phase) + w.w_minus * np.exp(1j * phase)) * sinc(
        np.asarray(x, dtype=float) * g.a / (2 * g.alpha)
    )
    return amp, g.envelope(x), eps_x


def intensity_pattern(xs, w: SlitAmplitudes, g: SlitGeometry) -> list[PatternSample]:
    amp, env, eps = detected_amplitude(np.asarray(xs, dtype=float), w, g)
    inten = np.abs(amp) ** 2
    return [
        PatternSample(float(x), float(e), float(en), float(i))
        for x, e, en, i in zip(np.asarray(xs, dtype=float), eps, env, inten)
    ]


def transmitted_intensity_oracle(
    xs,
    w: SlitAmplitudes,
    g: SlitGeometry,
    n_q: int = 2**14,
    q_max: Optional[float] = None,
    n_slit: int = 33,
) -> np.ndarray:
    """Detector counts from direct q-space integration, no far-field approximation.

    The field at the detector plane is the inverse transform of ``far_field_F``
    on a uniform q grid (|q| <= q_max, default 8 pi / a). Its squared
    modulus is integrated across the detector slit [x-b, x+b].
    """
    if n_q < 2**14:
        raise ValueError("n_q must be at least 2**14")
    q_max = 8 * np.pi / g.a if q_max is None else q_max
    q = np.linspace(-q_max, q_max, n_q)
    dq = q[1] - q[0]
    F = far_field_F(q, w, g)
    u = np.linspace(-g.b, g.b, n_slit)
    slit_w = np.full(n_slit, u[1] - u[0])
    slit_w[[0, -1]] *= 0.5
    out = np.empty(len(np.atleast_1d(xs)))
    for i, x in enumerate(np.atleast_1d(np.asarray(xs, dtype=float))):
        field = np.exp(1j * np.outer(x + u, q)) @ F * dq
        out[i] = np.sum(slit_w * np.abs(field) ** 2)
    return out
