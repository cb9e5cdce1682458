"""Oracle cross-validations, each returning (name, passed, detail)."""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from . import optics
from .channel import MziSetting, SpectralFilter, gamma, gamma_oracle
from .eraser import (
    MeasurementSetting,
    c_p_general,
    coincidence,
    full_state_oracle,
    oracle_scale,
    default_config,
)
from .optics import L, M, P, R
from .propagation import SYMMETRIC, detected_amplitude, transmitted_intensity_oracle
from .states import H, MINUS, PLUS, V, HybridKet, fidelity


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def check_gamma() -> CheckResult:
    lam = 702.2e-9
    filt = SpectralFilter(lam, 10e-9)
    worst = max(
        abs(gamma(filt, MziSetting.from_epsilon(e, lam)) - gamma_oracle(filt, MziSetting.from_epsilon(e, lam)))
        for e in (0, 0.25, 1, 5, 30, 50)
    )
    return CheckResult("gamma closed form vs quadrature", worst < 1e-6, f"max |diff| = {worst:.2e}")


def check_protocol_states() -> CheckResult:
    k = HybridKet.product
    eq4 = k(H, R, PLUS) - k(H, L, MINUS) + k(V, L, PLUS) + k(V, R, MINUS)
    eq6 = k(M, R, PLUS) - k(M, L, MINUS) - k(P, L, PLUS) - k(P, R, MINUS)
    f4 = fidelity(eq4.amplitudes, optics.marked_state().amplitudes)
    f6 = fidelity(eq6.amplitudes, optics.erased_state().amplitudes)
    ok = f4 > 1 - 1e-12 and f6 > 1 - 1e-12
    return CheckResult("protocol states", ok, f"fidelity marked={f4:.15f} erased={f6:.15f}")


def check_full_state_oracle() -> CheckResult:
    cfg0 = default_config()
    m = MeasurementSetting.from_label("P")
    xs = np.linspace(-1.2e-3, 1.2e-3, 5)
    ref, orc = [], []
    for eps in (0.0, 0.25, 1.3, 7.25, 19.25):
        cfg = cfg0.with_epsilon_I(eps)
        ref.extend(c_p_general(xs, cfg))
        orc.extend(full_state_oracle(x, m, cfg) for x in xs)
    ref, orc = np.array(ref), np.array(orc)
    k = oracle_scale(ref, orc)
    worst = float(np.max(np.abs(ref - k * orc) / np.abs(ref)))
    return CheckResult("full-state oracle vs closed form", worst < 1e-5, f"max rel err = {worst:.2e}")


def check_propagation() -> CheckResult:
    g = default_config().geometry
    xs = np.arange(-50, 51) * 30e-6
    amp, _, _ = detected_amplitude(xs, SYMMETRIC, g)
    far = np.abs(amp) ** 2
    brute = transmitted_intensity_oracle(xs, SYMMETRIC, g)
    worst = float(np.max(np.abs(far / far.max() - brute / brute.max())))
    return CheckResult("far-field amplitude vs q-space integration", worst < 0.02, f"max diff = {worst:.4f}")


def check_basis_completeness() -> CheckResult:
    cfg = default_config(3.1)
    xs = np.linspace(-1.5e-3, 1.5e-3, 41)
    worst = 0.0
    for theta, phi in ((0.3, 0.7), (np.pi / 4, 0), (1.1, -2.0)):
        m = MeasurementSetting(theta, phi)
        total = coincidence(xs, m, cfg) + coincidence(xs, m.orthogonal(), cfg)
        worst = max(worst, float(np.max(np.abs(total - cfg.geometry.envelope(xs) / 2))))
    return CheckResult("complementary outcomes sum to fringe-free total", worst < 1e-12, f"max diff = {worst:.1e}")


CHECKS: list[Callable[[], CheckResult]] = [
    check_gamma,
    check_protocol_states,
    check_full_state_oracle,
    check_propagation,
    check_basis_completeness,
]


def run_all() -> list[CheckResult]:
    return [check() for check in CHECKS]
