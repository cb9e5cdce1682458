"""Double-slit quantum eraser with a controlled Mach-Zehnder decoherence channel."""

from .channel import (
    InputPolarization,
    MziSetting,
    SpectralFilter,
    apply_channel,
    gamma,
    gamma_oracle,
    purity_closed_form,
)
from .eraser import (
    EraserConfig,
    MeasurementSetting,
    c_p_general,
    c_p_half_integer,
    c_p_quarter,
    coincidence,
    full_state_oracle,
    idler_density_at,
    default_config,
    visibility,
)
from .optics import basis, birefringent_double_slit, apply_idler_hwp_pi8, hwp, qwp
from .propagation import SlitAmplitudes, SlitGeometry, detected_amplitude, intensity_pattern
from .scan import RunConfig, emit_csv, fit_fringes, parse_config, run_scan
from .states import HybridKet, PolarizationDensity, density_from_ket, normalize, project_idler, purity

__version__ = "0.1.0"
