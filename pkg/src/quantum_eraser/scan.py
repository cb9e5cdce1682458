"""Run configuration, detector scans, fringe fitting and CSV output.

Config files are INI-style flat ``key = value`` text (an optional
``[eraser]`` section header is allowed). Lengths use experiment-facing
names: full slit width and centre-to-centre separation, which are halved
when the slit geometry is built. Lists are comma separated.
"""

from __future__ import annotations

import configparser
import csv
import io
import math
from dataclasses import dataclass, fields
from typing import Iterable, NamedTuple, Optional, Sequence, TextIO, Union

import numpy as np

from .channel import MziSetting, SpectralFilter
from .eraser import EraserConfig, MeasurementSetting, coincidence, full_state_oracle, oracle_scale
from .propagation import FraunhoferError, SlitGeometry

CSV_HEADER = ["epsilon_I", "x_m", "epsilon_x", "envelope", "coincidence_raw", "coincidence_normalized"]
ORACLE_STRIDE = 10
ORACLE_RTOL = 1e-5


class ConfigError(ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


class OracleMismatch(RuntimeError):
    pass


@dataclass(frozen=True)
class RunConfig:
    wavelength_nm: float = 702.0
    filter_width_nm: float = 10.0
    filter_width_is_fwhm: bool = False
    slit_full_width_um: float = 80.0
    slit_center_separation_um: float = 250.0
    detector_slit_width_um: float = 50.0
    propagation_distance_m: float = 0.2
    x_min_mm: float = -1.5
    x_max_mm: float = 1.5
    step_um: float = 30.0
    basis: Optional[str] = "P"
    theta_deg: Optional[float] = None
    phi_deg: Optional[float] = None
    epsilon_I_list: tuple = (0.25,)
    oracle_check: bool = False

    def __post_init__(self):
        for key in (
            "wavelength_nm",
            "filter_width_nm",
            "slit_full_width_um",
            "slit_center_separation_um",
            "detector_slit_width_um",
            "propagation_distance_m",
            "step_um",
        ):
            value = getattr(self, key)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(key, f"must be a positive length, got {value!r}")
        if not self.x_max_mm > self.x_min_mm:
            raise ConfigError("x_max_mm", "must exceed x_min_mm")
        n_steps = (self.x_max_mm - self.x_min_mm) * 1e3 / self.step_um
        if abs(n_steps - round(n_steps)) > 1e-6:
            raise ConfigError("step_um", "must divide the scan range")
        if not self.epsilon_I_list:
            raise ConfigError("epsilon_I_list", "must not be empty")
        if self.theta_deg is None and self.basis is None:
            raise ConfigError("basis", "set a basis label or theta_deg")
        try:
            self.measurement
        except ValueError as exc:
            raise ConfigError("basis", str(exc)) from None

    @property
    def xs(self) -> np.ndarray:
        n = int(round((self.x_max_mm - self.x_min_mm) * 1e3 / self.step_um))
        return (self.x_min_mm * 1e-3) + np.arange(n + 1) * (self.step_um * 1e-6)

    @property
    def measurement(self) -> MeasurementSetting:
        if self.theta_deg is not None:
            return MeasurementSetting(math.radians(self.theta_deg), math.radians(self.phi_deg or 0.0))
        return MeasurementSetting.from_label(self.basis)

    def geometry(self) -> SlitGeometry:
        return SlitGeometry.from_experiment(
            self.slit_full_width_um * 1e-6,
            self.slit_center_separation_um * 1e-6,
            self.detector_slit_width_um * 1e-6,
            self.propagation_distance_m,
            self.wavelength_nm * 1e-9,
        )

    def eraser_config(self, epsilon_I: float) -> EraserConfig:
        lam = self.wavelength_nm * 1e-9
        filt = SpectralFilter(lam, self.filter_width_nm * 1e-9, self.filter_width_is_fwhm)
        return EraserConfig(self.geometry(), filt, MziSetting.from_epsilon(epsilon_I, lam))


PRESETS = {
    "fig2": {"basis": "P", "epsilon_I_list": (0.0, 0.125, 0.25)},
    "fig3": {"basis": "P", "epsilon_I_list": tuple(n + 0.25 for n in range(41))},
    "fig5": {"basis": "P", "epsilon_I_list": (7.25, 11.25, 15.25, 19.25)},
}

_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _convert(key: str, raw: str):
    kind = _FIELD_TYPES[key]
    raw = raw.strip()
    try:
        if key == "epsilon_I_list":
            items = [s for s in raw.strip("[]").split(",") if s.strip()]
            return tuple(float(s) for s in items)
        if kind == "bool":
            low = raw.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if key == "basis":
            return raw.strip("'\"")
        value = float(raw)
    except ValueError:
        raise ConfigError(key, f"malformed value {raw!r}") from None
    return value


def parse_config(text: str = "", preset: Optional[str] = None) -> RunConfig:
    """Parse a flat key/value document; absent keys take the experimental defaults.

    A ``preset`` supplies defaults of its own, which explicit keys override.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    body = text if text.lstrip().startswith("[") else "[eraser]\n" + text
    try:
        parser.read_string(body)
    except configparser.Error as exc:
        raise ConfigError("<document>", str(exc)) from None
    values = {}
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError("preset", f"unknown preset {preset!r}")
        values.update(PRESETS[preset])
    explicit = {}
    for section in parser.sections():
        for key, raw in parser.items(section):
            if key not in _FIELD_TYPES:
                raise ConfigError(key, "unknown key")
            explicit[key] = _convert(key, raw)
    if "theta_deg" in explicit and "basis" not in explicit:
        explicit["basis"] = None
    values.update(explicit)
    return RunConfig(**values)


@dataclass(frozen=True)
class PatternRecord:
    epsilon_I: float
    x_m: float
    epsilon_x: float
    envelope: float
    coincidence_raw: float
    coincidence_normalized: float

    def row(self) -> list[str]:
        return [format(getattr(self, name), ".12g") for name in CSV_HEADER]


def _oracle_check(cfg: RunConfig, records: Sequence[PatternRecord]) -> None:
    m = cfg.measurement
    picked = [r for i, r in enumerate(records) if i % ORACLE_STRIDE == 0]
    ref = np.array([r.coincidence_raw for r in picked])
    orc = np.array([full_state_oracle(r.x_m, m, cfg.eraser_config(r.epsilon_I)) for r in picked])
    k = oracle_scale(ref, orc)
    floor = 1e-3 * ref.max()
    bad = [
        (r.epsilon_I, r.x_m, c, k * o)
        for r, c, o in zip(picked, ref, orc)
        if abs(c - k * o) > ORACLE_RTOL * max(abs(c), floor)
    ]
    if bad:
        lines = "\n".join(f"  eps_I={e:g} x={x:.6e}: model={c:.9e} oracle={o:.9e}" for e, x, c, o in bad)
        raise OracleMismatch(f"{len(bad)} oracle spot checks failed:\n{lines}")


def run_scan(cfg: RunConfig) -> list[PatternRecord]:
    """One record per (eps_I, x), eps_I-major and x ascending; each group normalized to a unit peak."""
    xs = cfg.xs
    m = cfg.measurement
    records = []
    for eps_i in cfg.epsilon_I_list:
        ec = cfg.eraser_config(eps_i)
        g = ec.geometry
        try:
            raw = coincidence(xs, m, ec)
        except FraunhoferError as exc:
            raise FraunhoferError(f"{exc}; offending x range {xs[0]:.4e}..{xs[-1]:.4e} m") from None
        peak = raw.max()
        norm = raw / peak if peak > 0 else np.zeros_like(raw)
        eps_x = g.epsilon_x(xs)
        env = g.envelope(xs)
        records.extend(
            PatternRecord(float(eps_i), float(x), float(e), float(en), float(c), float(nv))
            for x, e, en, c, nv in zip(xs, eps_x, env, raw, norm)
        )
    if cfg.oracle_check:
        _oracle_check(cfg, records)
    return records


class FringeFit(NamedTuple):
    visibility: float
    phase: float
    residual: float
    has_fringes: bool


def fit_fringes(records: Sequence[PatternRecord], min_periods: float = 2.0) -> FringeFit:
    """Least-squares fit of C(x) = s E(x) (1 - v sin(2 pi eps_x + phase)) over the central lobe.

    The model is linear in (s, s v cos(phase), s v sin(phase)), so the
    optimum is found by one linear solve rather than an iterative search.
    """
    if len({r.epsilon_I for r in records}) > 1:
        raise ValueError("fit_fringes expects records from a single eps_I group")
    env = np.array([r.envelope for r in records])
    y = np.array([r.coincidence_normalized for r in records])
    eps = np.array([r.epsilon_x for r in records])
    central = env > 0.2 * env.max()
    if np.ptp(eps[central]) < min_periods:
        raise ValueError("need at least two fringe periods inside the central lobe")
    e, y, eps = env[central], y[central], eps[central]
    design = np.stack([e, e * np.sin(2 * np.pi * eps), e * np.cos(2 * np.pi * eps)], axis=1)
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    rms = float(np.sqrt(np.mean((y - design @ coef) ** 2)))
    s0 = float(np.dot(e, y) / np.dot(e, e))
    rms0 = float(np.sqrt(np.mean((y - s0 * e) ** 2)))
    if rms0 - rms < 1e-6:
        return FringeFit(0.0, 0.0, rms0, False)
    s, c_sin, c_cos = coef
    vis = float(np.hypot(c_sin, c_cos) / s)
    phase = float(np.arctan2(-c_cos, -c_sin))
    return FringeFit(vis, phase, rms, True)


def group_records(records: Iterable[PatternRecord]) -> dict[float, list[PatternRecord]]:
    groups: dict[float, list[PatternRecord]] = {}
    for r in records:
        groups.setdefault(r.epsilon_I, []).append(r)
    return groups


def emit_csv(records: Iterable[PatternRecord], destination: Union[str, TextIO]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(r.row())
    text = buf.getvalue()
    if hasattr(destination, "write"):
        destination.write(text)
        return
    try:
        with open(destination, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {destination}: {exc.strerror}") from exc
