"""
Designing a low-Q cavity for a given emitter
============================================

Given an emitter linewidth, a coupling rate and the unavoidable side loss, the
solver picks the mirror coupling that satisfies resonance scattering. Two
worked systems ship as presets.
"""

# %%
from resscat import g_from_mode_volume, preset, q_factor, solve_resonance_scattering, strong_coupling_kappa_T
from resscat.design import FABRICATED_Q, UEV_PER_EV

for name in ("pillar_reithmaier", "nv_photonic_crystal"):
    report = solve_resonance_scattering(preset(name))
    print(f"--- {name}")
    for key, value in report.as_dict().items():
        print(f"{key:>22} = {value:.6g}")

# %%
# Strong coupling would need a much narrower cavity for the same emitter.
pillar = preset("pillar_reithmaier")
k_strong = strong_coupling_kappa_T(pillar.g, pillar.gamma)
print("strong coupling kappa_T =", k_strong, "ueV, Q =", round(q_factor(pillar.omega_photon * UEV_PER_EV, k_strong)))

# %%
# The NV coupling can also be estimated from oscillator strength and mode volume.
nv = preset("nv_photonic_crystal")
print("g (vacuum)  =", round(g_from_mode_volume(nv.oscillator_strength, nv.mode_volume), 3), "ueV")
print("g (diamond) =", round(g_from_mode_volume(nv.oscillator_strength, nv.mode_volume, 5.76), 3), "ueV")
q_needed = solve_resonance_scattering(nv).q_factor
print(f"Q needed {q_needed:.1f} vs fabricated {FABRICATED_Q['nv_photonic_crystal']}")
