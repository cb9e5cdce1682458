"""
Marking and erasing which-path information
==========================================

Build the entangled pair, pass the signal photon through the birefringent
double slit, then rotate the idler with a half-wave plate. At each stage
we project the idler and ask how much path coherence the signal keeps.
"""

# %%
# The source and the marked state
# -------------------------------
# Amplitudes live in a (2, 2, 2) array indexed as [idler, signal, path].

import numpy as np

from quantum_eraser import optics
from quantum_eraser.optics import L, M, P, R
from quantum_eraser.states import H, V, path_coherence, project_idler

marked = optics.marked_state()
print("marked state amplitudes (idler, signal, path):")
print(np.round(marked.amplitudes, 3))

# %%
# Linear idler outcomes carry full which-path information, so the signal's
# path coherence vanishes. Circular outcomes select fringes or antifringes.

for label, ket in (("H", H), ("V", V), ("L", L), ("R", R)):
    signal, prob = project_idler(marked, ket)
    print(f"idler {label}: prob={prob:.3f}  path coherence={path_coherence(signal):+.3f}")

# %%
# After the idler half-wave plate
# -------------------------------
# The plate swaps the roles of the linear bases: now P and M are the
# which-path outcomes, and the circular outcomes still restore fringes.

erased = optics.erased_state()
for label, ket in (("P", P), ("M", M), ("L", L), ("R", R)):
    signal, prob = project_idler(erased, ket)
    print(f"idler {label}: prob={prob:.3f}  path coherence={path_coherence(signal):+.3f}")
