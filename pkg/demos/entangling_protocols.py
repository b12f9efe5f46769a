"""
Heralded entanglement from reflection
=====================================

Each protocol is run on a small state vector. The closed-form fidelity is
printed next to the simulated one so the two can be compared directly.
"""

# %%
from resscat import (
    ContrastPair,
    fidelity_psi_plus,
    fidelity_psi_plus_two_spin,
    ghz_protocol,
    interference_herald,
    photon_photon_protocol,
    spin_spin_protocol,
)


def show(name, results):
    for r in results:
        print(f"{name:>15} {r.outcome_label:>5}  F={r.fidelity:.5f}  eta={r.efficiency:.5f}  p={r.branch_probability:.5f}")


# %%
# The ideal contrast: empty cavity reflects fully, coupled cavity not at all.
ideal = ContrastPair(1.0, 0.0)
show("photon-photon", photon_photon_protocol(ideal))
show("spin-spin", spin_spin_protocol(ideal, ideal))
show("interference", interference_herald(ideal, ideal))

# %%
# A realistic contrast with side loss.
lossy = ContrastPair(-0.859375, 0.0703125)
show("photon-photon", photon_photon_protocol(lossy))
print("closed form F+ =", round(fidelity_psi_plus(lossy), 5))

# %%
# Two mismatched cavities. The bound from the closed form is conservative.
other = ContrastPair(-0.7, 0.15)
show("spin-spin", spin_spin_protocol(lossy, other))
print("closed form lower bound =", round(fidelity_psi_plus_two_spin(lossy, other), 5))

# %%
# GHZ states off one spin: each extra photon halves the herald rate.
for n in range(2, 7):
    up = ghz_protocol(ideal, n)[0]
    print(f"n={n}: eta={up.efficiency:.5f}  (2^-n = {2.0 ** -n:.5f})")
