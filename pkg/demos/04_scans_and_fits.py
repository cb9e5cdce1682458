"""
Configured scans, CSV output and fringe fits
============================================

The same machinery the command line uses: parse a config, run a scan,
write CSV, and fit the fringes of each group.
"""

# %%
import io

from quantum_eraser.scan import emit_csv, fit_fringes, group_records, parse_config, run_scan

cfg = parse_config(
    """
    # a quick scan in the antifringe outcome
    basis = M
    step_um = 20
    epsilon_I_list = 0.25, 3.25, 9.25
    oracle_check = true
    """
)
records = run_scan(cfg)

# %%
buf = io.StringIO()
emit_csv(records, buf)
print("\n".join(buf.getvalue().splitlines()[:4]))

# %%
# Fits
# ----
# The phase of the antifringe outcome sits half a period from the fringe one.

for eps, group in group_records(records).items():
    fit = fit_fringes(group)
    print(f"eps_I={eps:5.2f}  v={fit.visibility:.4f}  phase={fit.phase:+.3f}  rms={fit.residual:.1e}")
