"""Decohered double-slit eraser: idler density at the detector, coincidence patterns, visibility.

The unnormalized idler polarization density at detector position x is

    (1/8) [A- |H><H| + A+ |V><V| - (B |H><V| + B* |V><H|)]

with A+ = A- = 2 sinc^2(x a / 2 alpha) and
B = sinc^2(x a / 2 alpha) (exp(xi+) - exp(xi-)), where

    xi+- = -2 pi^2 eps_lambda^2 (eps_x +- eps_I)^2 +- 2 pi i (eps_x -+ eps_I).

The Gaussian exponent uses 2 pi^2 throughout; ``full_state_oracle`` traces
the pure two-photon state numerically and confirms it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import optics
from .channel import SPEED_OF_LIGHT, MziSetting, SpectralFilter, check_sampling, frequency_grid
from .propagation import PatternSample, SlitGeometry, check_fraunhofer
from .states import PolarizationDensity, polarization_ket

# Samples with envelope below this fraction of the peak are ignored when
# extracting visibility (keeps division away from sinc zeros).
CENTRAL_LOBE_FRACTION = 0.2
# Trace below this (relative to the on-axis value 1/4) counts as a diffraction zero.
ZERO_INTENSITY = 1e-20


@dataclass(frozen=True)
class EraserConfig:
    geometry: SlitGeometry
    filter: SpectralFilter
    mzi: MziSetting

    def __post_init__(self):
        lam = self.geometry.wavelength
        if abs(self.filter.center_wavelength - lam) > 1e-15 * lam or abs(self.mzi.wavelength - lam) > 1e-15 * lam:
            raise ValueError("geometry, filter and interferometer wavelengths must agree")

    @property
    def epsilon_I(self) -> float:
        return self.mzi.epsilon_I

    @property
    def epsilon_lambda(self) -> float:
        return self.filter.epsilon_lambda

    def with_epsilon_I(self, epsilon_I: float) -> "EraserConfig":
        return replace(self, mzi=MziSetting.from_epsilon(epsilon_I, self.geometry.wavelength))


def default_config(epsilon_I: float = 0.0) -> EraserConfig:
    """Experimental defaults: 702 nm, 10 nm filter, 80 um slits 250 um apart, 50 um detector slit, 0.2 m."""
    lam = 702e-9
    geom = SlitGeometry.from_experiment(80e-6, 250e-6, 50e-6, 0.2, lam)
    return EraserConfig(geom, SpectralFilter(lam, 10e-9), MziSetting.from_epsilon(epsilon_I, lam))


@dataclass(frozen=True)
class MeasurementSetting:
    """Idler projector onto cos(theta)|H> + exp(i phi) sin(theta)|V>."""

    theta: float
    phi: float = 0.0

    _LABELS = {
        "H": (0.0, 0.0),
        "V": (np.pi / 2, 0.0),
        "P": (np.pi / 4, 0.0),
        "M": (-np.pi / 4, 0.0),
        "L": (np.pi / 4, np.pi / 2),
        "R": (np.pi / 4, -np.pi / 2),
    }

    @classmethod
    def from_label(cls, label: str) -> "MeasurementSetting":
        try:
            return cls(*cls._LABELS[label.upper()])
        except KeyError:
            raise ValueError(f"unknown measurement label {label!r}") from None

    @property
    def ket(self) -> np.ndarray:
        return polarization_ket(self.theta, self.phi)

    def orthogonal(self) -> "MeasurementSetting":
        return MeasurementSetting(self.theta + np.pi / 2, self.phi)


class XiPair(NamedTuple):
    xi_plus: np.ndarray
    xi_minus: np.ndarray


class DensityWeights(NamedTuple):
    a_minus: np.ndarray
    a_plus: np.ndarray
    b: np.ndarray


class IdlerDensity(NamedTuple):
    weights: DensityWeights
    density: Optional[PolarizationDensity]
    zero_intensity: bool


def xi_pair(epsilon_x, epsilon_I, epsilon_lambda) -> XiPair:
    ex = np.asarray(epsilon_x, dtype=float)
    k = 2 * np.pi**2 * epsilon_lambda**2
    xi_p = -k * (ex + epsilon_I) ** 2 + 2j * np.pi * (ex - epsilon_I)
    xi_m = -k * (ex - epsilon_I) ** 2 - 2j * np.pi * (ex + epsilon_I)
    return XiPair(xi_p, xi_m)


def density_weights(x, cfg: EraserConfig) -> DensityWeights:
    g = cfg.geometry
    env = g.envelope(x)
    xi = xi_pair(g.epsilon_x(x), cfg.epsilon_I, cfg.epsilon_lambda)
    return DensityWeights(2 * env, 2 * env, env * (np.exp(xi.xi_plus) - np.exp(xi.xi_minus)))


def idler_density_at(x: float, cfg: EraserConfig) -> IdlerDensity:
    check_fraunhofer(cfg.geometry)
    w = density_weights(float(x), cfg)
    a_m, a_p, b = float(w.a_minus), float(w.a_plus), complex(w.b)
    trace = (a_m + a_p) / 8
    if trace <= ZERO_INTENSITY:
        return IdlerDensity(w, None, True)
    m = np.array([[a_m, -b], [-np.conj(b), a_p]], dtype=complex) / 8 / trace
    return IdlerDensity(w, PolarizationDensity(m), False)


def coincidence(x, m: MeasurementSetting, cfg: EraserConfig):
    """Tr(rho_unnormalized |theta><theta|) at detector position(s) ``x``."""
    check_fraunhofer(cfg.geometry)
    w = density_weights(x, cfg)
    c, s = np.cos(m.theta), np.sin(m.theta)
    val = (
        w.a_minus * c**2
        + w.a_plus * s**2
        - 2 * c * s * np.real(w.b * np.exp(1j * m.phi))
    ) / 8
    return np.maximum(val, 0.0)


def _chi(epsilon_x, epsilon_I, epsilon_lambda):
    k = 2 * np.pi**2 * epsilon_lambda**2
    chi_p = np.exp(-k * (epsilon_x + epsilon_I) ** 2) * np.cos(2 * np.pi * (epsilon_x - epsilon_I))
    chi_m = np.exp(-k * (epsilon_x - epsilon_I) ** 2) * np.cos(2 * np.pi * (epsilon_x + epsilon_I))
    return chi_p, chi_m


def c_p_general(x, cfg: EraserConfig):
    """P-projected coincidence: sinc^2 (2 - (chi+ - chi-))."""
    g = cfg.geometry
    chi_p, chi_m = _chi(g.epsilon_x(x), cfg.epsilon_I, cfg.epsilon_lambda)
    return g.envelope(x) * (2 - (chi_p - chi_m))


def _require_epsilon_I(cfg: EraserConfig, expected: float) -> None:
    if abs(cfg.epsilon_I - expected) > 1e-9:
        raise ValueError(f"configuration has epsilon_I={cfg.epsilon_I}, expected {expected}")


def c_p_half_integer(x, n: int, cfg: EraserConfig):
    """P-projected coincidence at eps_I = n/2 (cosines factor out)."""
    _require_epsilon_I(cfg, n / 2)
    g = cfg.geometry
    ex = g.epsilon_x(x)
    k = 2 * np.pi**2 * cfg.epsilon_lambda**2
    return g.envelope(x) * (
        1 + (-1) ** n * np.exp(-k * (ex**2 + n**2 / 4)) * np.sinh(n * k * ex) * np.cos(2 * np.pi * ex)
    )


def c_p_quarter(x, n: int, cfg: EraserConfig):
    """P-projected coincidence at eps_I = n + 1/4 with the cosh factor set to 1."""
    _require_epsilon_I(cfg, n + 0.25)
    g = cfg.geometry
    ex = g.epsilon_x(x)
    k = 2 * np.pi**2 * cfg.epsilon_lambda**2
    return g.envelope(x) * (1 - np.exp(-k * (ex**2 + n**2)) * np.sin(2 * np.pi * ex))


def central_visibility_law(n, epsilon_lambda: float):
    return np.exp(-2 * np.pi**2 * epsilon_lambda**2 * np.asarray(n, dtype=float) ** 2)


def pattern(xs, values, cfg: EraserConfig) -> list[PatternSample]:
    """Wrap raw coincidence values into samples normalized to a unit peak."""
    xs = np.asarray(xs, dtype=float)
    values = np.asarray(values, dtype=float)
    peak = values.max() if values.size else 0.0
    g = cfg.geometry
    norm = values / peak if peak > 0 else np.zeros_like(values)
    return [
        PatternSample(float(x), float(e), float(en), float(c), float(nv))
        for x, e, en, c, nv in zip(xs, g.epsilon_x(xs), g.envelope(xs), values, norm)
    ]


class Visibility(NamedTuple):
    value: float
    has_fringes: bool


def visibility(samples: Sequence[PatternSample], min_periods: float = 2.0) -> Visibility:
    """(max - min)/(max + min) of coincidence/envelope over the central envelope lobe."""
    if not samples:
        return Visibility(0.0, False)
    env = np.array([s.envelope for s in samples])
    coin = np.array([s.coincidence for s in samples])
    eps = np.array([s.epsilon_x for s in samples])
    central = env > CENTRAL_LOBE_FRACTION * env.max()
    if not central.any() or np.ptp(eps[central]) < min_periods:
        return Visibility(0.0, False)
    ratio = coin[central] / env[central]
    hi, lo = ratio.max(), ratio.min()
    if hi + lo <= 0:
        return Visibility(0.0, False)
    v = (hi - lo) / (hi + lo)
    if v < 1e-9:
        return Visibility(0.0, False)
    return Visibility(float(v), True)


def full_state_oracle(
    x: float,
    m: MeasurementSetting,
    cfg: EraserConfig,
    n_points: int = 4096,
    span: float = 10.0,
) -> float:
    """Coincidence rate from the pure two-photon state, traced numerically.

    The marked state (birefringent slit, then the idler half-wave plate) is
    carried through, frequency by frequency. The signal picks up the
    path-dependent phase exp(-+i w_s delta_x / 2c) and is projected onto the
    detector mode. The idler's V component picks up -exp(i w_i delta_I / c)
    in the interferometer, and the idler is projected onto ``m``. The
    probability is summed over signal polarization and averaged over the
    Gaussian spectral intensity, with w_s = w and w_i = 2 w_c - w. The
    result is proportional to ``coincidence`` with a fixed constant.
    """
    if n_points < 1024:
        raise ValueError("n_points must be >= 1024")
    g = cfg.geometry
    check_fraunhofer(g)
    w, weights = frequency_grid(cfg.filter, n_points, span)
    delta_x = 2 * x * g.d / g.L
    delta_I = cfg.mzi.path_difference
    check_sampling(w, abs(delta_I) + abs(delta_x) / 2)

    psi = optics.erased_state().amplitudes  # [idler, signal, path]
    w_idler = 2 * cfg.filter.center_frequency - w
    path_phase = np.stack(
        [np.exp(-1j * w * delta_x / (2 * SPEED_OF_LIGHT)), np.exp(1j * w * delta_x / (2 * SPEED_OF_LIGHT))]
    )
    detected = np.einsum("isp,pw->isw", psi, path_phase)
    bra = m.ket.conj()
    mzi_v = -np.exp(1j * w_idler * delta_I / SPEED_OF_LIGHT)
    projected = bra[0] * detected[0] + bra[1] * mzi_v * detected[1]
    prob = np.sum(np.abs(projected) ** 2, axis=0)
    return float(g.envelope(x) * np.sum(weights * prob))


def oracle_scale(reference, oracle) -> float:
    """Least-squares constant k minimizing |reference - k * oracle|."""
    reference = np.asarray(reference, dtype=float)
    oracle = np.asarray(oracle, dtype=float)
    return float(np.dot(reference, oracle) / np.dot(oracle, oracle))
