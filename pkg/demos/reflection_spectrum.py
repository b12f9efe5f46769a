"""
Reflection spectrum of a dipole in a leaky cavity
=================================================

A cavity much broader than the emitter reflects almost everything, except in a
narrow window around the dipole frequency. At the matching point g² = κ_T γ / 4
that window reaches zero reflectivity.
"""

# %%
import numpy as np

from resscat import CavitySystem, empty_cavity_reflectivity, reflectivity

gamma = 1.0
sys = CavitySystem.at_resonance_scattering(kappa=100 * gamma, kappa_s=0.0, gamma=gamma)
print(f"g = {sys.g:.3f}, kappa_T = {sys.kappa_T:.1f}")

# %%
# Sweep a few dipole linewidths either side of resonance.
detuning = np.linspace(-5, 5, 11) * gamma
r_dipole = reflectivity(sys, detuning)
r_empty = empty_cavity_reflectivity(sys, detuning)

print(f"{'delta/gamma':>11} {'|r_d|^2':>10} {'lorentz':>10} {'|r_c|^2':>10}")
for d, rd, rc in zip(detuning, r_dipole, r_empty):
    lorentz = d**2 / (d**2 + gamma**2)
    print(f"{d:11.1f} {abs(rd) ** 2:10.5f} {lorentz:10.5f} {abs(rc) ** 2:10.5f}")

# %%
# The dip takes the dipole's linewidth, not the cavity's.
# Side loss lifts the floor of the dip and pulls down the empty-cavity level.
lossy = CavitySystem.at_resonance_scattering(kappa=80.0, kappa_s=20.0, gamma=gamma)
print("with side loss: |r_d| =", round(abs(reflectivity(lossy, 0.0)), 4),
      " |r_c| =", round(abs(empty_cavity_reflectivity(lossy, 0.0)), 4))
