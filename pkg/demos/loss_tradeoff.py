"""
Fidelity and efficiency against cavity loss
===========================================

Side leakage κ_s shrinks the reflectivity contrast. This script walks the
ratio κ/κ_s and prints what it costs in Bell-state fidelity and herald rate.
"""

# %%
import numpy as np

from resscat import (
    CavitySystem,
    ContrastPair,
    efficiency_psi_minus,
    efficiency_psi_plus,
    fidelity_psi_plus,
    resonant_contrast,
)

kappa_T, gamma = 1.0, 0.1


def contrast(ratio):
    kappa = kappa_T * ratio / (1 + ratio)
    sys = CavitySystem.at_resonance_scattering(kappa, kappa_T - kappa, gamma)
    return ContrastPair(*resonant_contrast(sys))


# %%
print(f"{'k/ks':>8} {'r_c':>8} {'r_d':>8} {'F+':>8} {'eta+':>8} {'eta-':>8}")
for ratio in np.logspace(-3, 3, 13):
    c = contrast(ratio)
    print(f"{ratio:8.3g} {c.r_c.real:8.4f} {c.r_d.real:8.4f} "
          f"{fidelity_psi_plus(c):8.4f} {efficiency_psi_plus(c):8.4f} {efficiency_psi_minus(c):8.4f}")

# %%
# κ = κ_s makes the empty cavity perfectly absorbing, so the ψ+ herald is
# perfect but rare. κ = 2κ_s equalises |r_c| and |r_d| and is the worst case.
for ratio in (1.0, 2.0):
    c = contrast(ratio)
    print(f"k/ks = {ratio}: F+ = {fidelity_psi_plus(c):.6f}, eta+ = {efficiency_psi_plus(c):.6f}")
