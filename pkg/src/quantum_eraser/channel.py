"""The unbalanced polarizing Mach-Zehnder interferometer as a decoherence channel.

The interferometer delays V relative to H by ``delta_I``. Tracing out the
photon frequency turns the delay into a complex coherence factor ``gamma``
multiplying the H/V off-diagonal of the polarization density operator.

Spectral convention: the filtered spectral *intensity* is a Gaussian with
standard deviation ``dw = 2*pi*c*dlambda/lambda**2`` around ``w_c``. This
is what makes ``|gamma| = exp(-2 pi^2 eps_lambda^2 eps_I^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import NORM_TOL, PolarizationDensity

SPEED_OF_LIGHT = 299_792_458.0
FWHM_TO_SIGMA = 1.0 / (2.0 * np.sqrt(2.0 * np.log(2.0)))


@dataclass(frozen=True)
class SpectralFilter:
    """Gaussian interference filter.

    ``width`` is used directly as the Gaussian width unless ``width_is_fwhm``
    is set, in which case it is converted to a standard deviation first.
    """

    center_wavelength: float
    width: float
    width_is_fwhm: bool = False

    def __post_init__(self):
        if not self.center_wavelength > 0:
            raise ValueError("center_wavelength must be positive")
        if not 0 < self.width < self.center_wavelength:
            raise ValueError("filter width must satisfy 0 < width < center_wavelength")

    @property
    def sigma_wavelength(self) -> float:
        return self.width * FWHM_TO_SIGMA if self.width_is_fwhm else self.width

    @property
    def epsilon_lambda(self) -> float:
        return self.sigma_wavelength / self.center_wavelength

    @property
    def center_frequency(self) -> float:
        return 2 * np.pi * SPEED_OF_LIGHT / self.center_wavelength

    @property
    def bandwidth(self) -> float:
        """Angular-frequency width dw = 2 pi c dlambda / lambda^2."""
        return 2 * np.pi * SPEED_OF_LIGHT * self.sigma_wavelength / self.center_wavelength**2

    @property
    def coherence_length(self) -> float:
        return 2 * np.pi * SPEED_OF_LIGHT / self.bandwidth


@dataclass(frozen=True)
class MziSetting:
    path_difference: float
    wavelength: float

    @classmethod
    def from_epsilon(cls, epsilon_I: float, wavelength: float) -> "MziSetting":
        return cls(epsilon_I * wavelength, wavelength)

    @property
    def epsilon_I(self) -> float:
        return self.path_difference / self.wavelength


@dataclass(frozen=True)
class InputPolarization:
    c_h: complex
    c_v: complex

    def __post_init__(self):
        if abs(abs(self.c_h) ** 2 + abs(self.c_v) ** 2 - 1.0) > NORM_TOL:
            raise ValueError("|c_h|^2 + |c_v|^2 must equal 1")


def gamma_from_epsilon(epsilon_lambda, epsilon_I):
    """Closed-form coherence factor; broadcasts over array inputs."""
    eps_i = np.asarray(epsilon_I, dtype=float)
    return np.exp(-2 * np.pi**2 * epsilon_lambda**2 * eps_i**2 - 2j * np.pi * eps_i)


def gamma(filt: SpectralFilter, mzi: MziSetting) -> complex:
    return complex(gamma_from_epsilon(filt.epsilon_lambda, mzi.path_difference / filt.center_wavelength))


def frequency_grid(filt: SpectralFilter, n_points: int, span: float) -> tuple[np.ndarray, np.ndarray]:
    """Uniform angular-frequency grid over w_c +/- span*dw and normalized trapezoid weights
    (spectral intensity x quadrature weight, summing to 1)."""
    if n_points < 64:
        raise ValueError("n_points must be >= 64")
    if span < 6:
        raise ValueError("span must be >= 6 bandwidths")
    wc, dw = filt.center_frequency, filt.bandwidth
    w = np.linspace(wc - span * dw, wc + span * dw, n_points)
    trap = np.full(n_points, w[1] - w[0])
    trap[[0, -1]] *= 0.5
    weights = trap * np.exp(-((w - wc) ** 2) / (2 * dw**2))
    return w, weights / weights.sum()


def check_sampling(w: np.ndarray, delay: float) -> None:
    """Require at least 4 grid steps per oscillation of exp(i w delay/c)."""
    rate = abs(delay) / SPEED_OF_LIGHT
    if rate == 0:
        return
    period = 2 * np.pi / rate
    if period < 4 * (w[1] - w[0]):
        raise ValueError(
            f"undersampled phase: oscillation period {period:.3e} rad/s spans fewer than 4 grid steps"
        )


def gamma_oracle(filt: SpectralFilter, mzi: MziSetting, n_points: int = 4096, span: float = 10.0) -> complex:
    """Coherence factor by direct quadrature of the frequency trace.

    The H/V off-diagonal of the traced density operator is the spectral
    average of exp(-i w delta_I / c); the trapezoidal rule is applied on a
    uniform grid.
    """
    w, weights = frequency_grid(filt, n_points, span)
    check_sampling(w, mzi.path_difference)
    return complex(np.sum(weights * np.exp(-1j * w * mzi.path_difference / SPEED_OF_LIGHT)))


def apply_channel(inp: InputPolarization, g: complex) -> PolarizationDensity:
    if abs(g) > 1.0 + NORM_TOL:
        raise ValueError("unphysical coherence: |gamma| > 1")
    ch, cv = complex(inp.c_h), complex(inp.c_v)
    off = -g * ch * cv.conjugate()
    m = np.array([[abs(ch) ** 2, off], [off.conjugate(), abs(cv) ** 2]], dtype=complex)
    return PolarizationDensity(m)


def apply_channel_to_density(rho: np.ndarray, g: complex) -> np.ndarray:
    """Channel action on an arbitrary 2x2 input density (linear extension of ``apply_channel``)."""
    rho = np.asarray(rho, dtype=complex)
    return np.array([[rho[0, 0], -g * rho[0, 1]], [-np.conj(g) * rho[1, 0], rho[1, 1]]])


def purity_closed_form(inp: InputPolarization, g: complex) -> float:
    if abs(g) > 1.0 + NORM_TOL:
        raise ValueError("unphysical coherence: |gamma| > 1")
    return 1.0 - 2.0 * (abs(inp.c_h) * abs(inp.c_v)) ** 2 * (1.0 - abs(g) ** 2)
