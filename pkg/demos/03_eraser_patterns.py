"""
Coincidence patterns across the imbalance
=========================================

Scan the signal detector across the screen with the idler measured in the
diagonal basis. A balanced interferometer gives bare diffraction; a quarter
wavelength of imbalance gives full fringes; larger imbalances wash them out.
"""

# %%
import numpy as np

from quantum_eraser.eraser import (
    MeasurementSetting,
    c_p_quarter,
    central_visibility_law,
    coincidence,
    default_config,
    pattern,
    visibility,
)

xs = np.arange(-50, 51) * 30e-6
p = MeasurementSetting.from_label("P")
m = MeasurementSetting.from_label("M")


def ascii_row(values, width=60):
    levels = " .:-=+*#%@"
    v = np.interp(np.linspace(0, len(values) - 1, width), np.arange(len(values)), values)
    return "".join(levels[int(round(u * (len(levels) - 1)))] for u in v / v.max())


# %%
# Three imbalances
# ----------------

for eps in (0.0, 0.125, 0.25):
    cfg = default_config(eps)
    c = coincidence(xs, p, cfg)
    v = visibility(pattern(xs, c, cfg))
    print(f"eps_I={eps:5.3f} v={v.value:.3f} |{ascii_row(c)}|")

# %%
# Fringes and antifringes
# -----------------------
# The two diagonal outcomes are shifted by half a period.

cfg = default_config(0.25)
print("P |" + ascii_row(coincidence(xs, p, cfg)) + "|")
print("M |" + ascii_row(coincidence(xs, m, cfg)) + "|")

# %%
# Visibility decay
# ----------------

el = default_config().epsilon_lambda
for n in (0, 7, 11, 15, 19, 35, 36):
    cfg = default_config(n + 0.25)
    v = visibility(pattern(xs, c_p_quarter(xs, n, cfg), cfg)).value
    print(f"n={n:2d}  v={v:.4f}  law={central_visibility_law(n, el):.4f}")
