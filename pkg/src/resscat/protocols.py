"""
Heralded entanglement protocols built on the spin-dependent reflection map.

Each protocol is run numerically on an explicit ``JointState``; the closed
form fidelity and efficiency expressions live alongside so the two routes can
be checked against each other.

Conventions
-----------
Fidelity is the amplitude overlap |<target|branch>| / ||branch||.

For the protocols that herald through a Hadamard followed by a measurement
(photon-photon, spin-spin, GHZ) the efficiency counts the rotation without
its 1/√2 normalisation, i.e.::

    efficiency = 2 * branch_probability * fidelity**2

where ``branch_probability`` is the physical probability of the herald
outcome for a unit input. Under this convention ideal contrast (r_c=1, r_d=0)
gives 1/4 for each outcome, which equals the total probability of producing
either Bell state, and the closed forms below hold exactly. The
beam-splitter model reports the plain yield (weight 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qstate
from .cavity import CavitySystem, resonant_contrast
from .qstate import JointState, bell_state, hadamard, make_superposition_state, measure, overlap_fidelity, reflect

__all__ = [
    "ContrastPair",
    "ProtocolResult",
    "ROTATION_HERALD_WEIGHT",
    "photon_photon_protocol",
    "spin_spin_protocol",
    "ghz_protocol",
    "interference_herald",
    "click_pattern_probabilities",
    "fidelity_psi_plus",
    "efficiency_psi_plus",
    "efficiency_psi_minus",
    "fidelity_psi_plus_two_spin",
    "efficiency_psi_plus_two_spin",
    "ghz_efficiency",
]

ROTATION_HERALD_WEIGHT = 2.0


@dataclass(frozen=True)
class ContrastPair:
    """On-resonance reflection amplitudes of the empty (``r_c``) and dipole-coupled (``r_d``) cavity."""

    r_c: complex
    r_d: complex

    def __post_init__(self):
        for name in ("r_c", "r_d"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"{name} must be finite")
            if abs(v) > 1 + 1e-9:
                raise ValueError(f"|{name}| = {abs(v):.6g} exceeds 1; a passive cavity cannot amplify")
            object.__setattr__(self, name, v)

    @classmethod
    def from_system(cls, sys: CavitySystem) -> "ContrastPair":
        r_c, r_d = resonant_contrast(sys)
        return cls(r_c, r_d)


@dataclass(frozen=True)
class ProtocolResult:
    outcome_label: str
    fidelity: float
    efficiency: float
    branch_probability: float
    collapsed_state: JointState
    herald_weight: float = 1.0


def _result(label, record, target, weight):
    fid = overlap_fidelity(record.collapsed, target)
    return ProtocolResult(
        outcome_label=label,
        fidelity=fid,
        efficiency=weight * record.probability * fid**2,
        branch_probability=record.probability,
        collapsed_state=record.collapsed,
        herald_weight=weight,
    )


def _ghz_targets(register):
    n = len(register)
    zeros, ones = [0] * n, [1] * n
    return bell_state(register, zeros, ones, +1), bell_state(register, zeros, ones, -1)


def ghz_protocol(c: ContrastPair, n_photons: int, encoding="polarization") -> list[ProtocolResult]:
    """Reflect ``n_photons`` H-polarised photons off one spin, rotate and measure the spin.

    The up outcome heralds (|R..R> + |L..L>)/√2 and down heralds the minus
    combination.
    """
    if n_photons < 1:
        raise ValueError("need at least one photon")
    state = make_superposition_state(1, n_photons, encoding)
    for k in range(n_photons):
        state = reflect(state, k, 0, c.r_c, c.r_d)
    state = hadamard(state, state.find("spin", 0))
    up, down = measure(state, state.find("spin", 0))
    plus, minus = _ghz_targets(up.collapsed.register)
    return [
        _result("up", up, plus, ROTATION_HERALD_WEIGHT),
        _result("down", down, minus, ROTATION_HERALD_WEIGHT),
    ]


def photon_photon_protocol(c: ContrastPair, encoding="polarization") -> list[ProtocolResult]:
    """Entangle two photons through one spin; results for spin up (ψ+) and down (ψ-)."""
    return ghz_protocol(c, 2, encoding)


def spin_spin_protocol(c1: ContrastPair, c2: ContrastPair, encoding="polarization") -> list[ProtocolResult]:
    """Entangle two remote spins with one photon reflected off both cavities.

    After a Hadamard on the photon, outcome H heralds (|up,up> + |down,down>)/√2
    and V heralds the minus combination.
    """
    state = make_superposition_state(2, 1, encoding)
    state = reflect(state, 0, 0, c1.r_c, c1.r_d)
    state = reflect(state, 0, 1, c2.r_c, c2.r_d)
    photon = state.find("photon", 0)
    state = hadamard(state, photon)
    h, v = measure(state, photon)
    plus, minus = _ghz_targets(h.collapsed.register)
    return [
        _result("H", h, plus, ROTATION_HERALD_WEIGHT),
        _result("V", v, minus, ROTATION_HERALD_WEIGHT),
    ]


def _interference_branches(c1: ContrastPair, c2: ContrastPair) -> dict[str, np.ndarray]:
    # Spin m=0 (bit 0) sits on the coupled transition and sees r_d; m=±1 sees r_c.
    # A photon that is not reflected is treated as a vacuum component of its rail
    # with amplitude sqrt(1-|r|^2); which-path information left in the loss modes
    # is ignored, so the heralded branches are pure.
    s = 1 / np.sqrt(2)
    out = {k: np.zeros(4, dtype=complex) for k in ("vacuum", "c", "d", "cc", "dd", "cd")}
    for s1 in (0, 1):
        for s2 in (0, 1):
            r1 = c1.r_d if s1 == 0 else c1.r_c
            r2 = c2.r_d if s2 == 0 else c2.r_c
            l1 = math.sqrt(max(0.0, 1 - abs(r1) ** 2))
            l2 = math.sqrt(max(0.0, 1 - abs(r2) ** 2))
            idx = s1 + 2 * s2
            spin_amp = 0.5
            # a1 -> (c + d)/√2, a2 -> (c - d)/√2
            out["c"][idx] = spin_amp * s * (r1 * l2 + l1 * r2)
            out["d"][idx] = spin_amp * s * (r1 * l2 - l1 * r2)
            # a1† a2† -> (c†² - d†²)/2; |2> carries a √2 from c†²|0>
            out["cc"][idx] = spin_amp * r1 * r2 * s
            out["dd"][idx] = -spin_amp * r1 * r2 * s
            out["vacuum"][idx] = spin_amp * l1 * l2
    return out


def click_pattern_probabilities(c1: ContrastPair, c2: ContrastPair) -> dict[str, float]:
    """Probability of each detector pattern in the beam-splitter model.

    Keys: ``c``/``d`` one click in that output, ``cc``/``dd`` two photons in
    one output, ``cd`` coincidence (always 0 for identical photons), and
    ``vacuum``.
    """
    return {k: float(np.vdot(v, v).real) for k, v in _interference_branches(c1, c2).items()}


def interference_herald(c1: ContrastPair, c2: ContrastPair) -> list[ProtocolResult]:
    """Single-round two-cavity scheme with both photons interfered on a 50:50 beam splitter.

    This is a model-dependent, single-round simplification: each spin starts
    in (|0> + |1>)/√2, photon j reflects off cavity j, and a single click in
    output ``c`` (``d``) heralds the two-spin branch compared against
    (|01> + |10>)/√2 ((|01> - |10>)/√2). Efficiency is the physical yield
    ``branch_probability * fidelity**2``.
    """
    branches = _interference_branches(c1, c2)
    register = qstate.make_register(2, 0)
    targets = {
        "c": bell_state(register, [0, 1], [1, 0], +1),
        "d": bell_state(register, [0, 1], [1, 0], -1),
    }
    results = []
    for label in ("c", "d"):
        amps = branches[label]
        prob = float(np.vdot(amps, amps).real)
        collapsed = JointState(amps / np.sqrt(prob) if prob > 0 else amps, register)
        record = qstate.MeasurementRecord(register[0], 0, label, prob, collapsed)
        results.append(_result(label, record, targets[label], 1.0))
    return results


def _as_complex(c: ContrastPair):
    return complex(c.r_c), complex(c.r_d)


def fidelity_psi_plus(c: ContrastPair) -> float:
    """Closed-form ψ+ fidelity for the two-photon, one-spin protocol."""
    r_c, r_d = _as_complex(c)
    if r_c == 0 and r_d == 0:
        raise ValueError("fidelity undefined when both reflectivities vanish")
    den = abs(r_d**2 + r_c**2) ** 2
    if den == 0:
        return 0.0
    return 1 / math.sqrt(1 + 4 * abs(r_d * r_c) ** 2 / den)


def efficiency_psi_plus(c: ContrastPair) -> float:
    r_c, r_d = _as_complex(c)
    return abs(r_d**2 + r_c**2) ** 2 / 4


def efficiency_psi_minus(c: ContrastPair) -> float:
    r_c, r_d = _as_complex(c)
    return abs(r_d**2 - r_c**2) ** 2 / 4


def fidelity_psi_plus_two_spin(c1: ContrastPair, c2: ContrastPair) -> float:
    """Closed-form ψ+ fidelity for two spins entangled by one photon.

    Symmetric in (c1, c2) and a function of the per-cavity ratios r_d/r_c
    only. Agrees with the state-vector protocol whenever
    r_d1 r_c2 = r_c1 r_d2 (in particular for identical cavities); for unequal
    contrasts it is a lower bound on the state-vector value.
    """
    rc1, rd1 = _as_complex(c1)
    rc2, rd2 = _as_complex(c2)
    den = abs(rd1 * rd2 + rc1 * rc2) ** 2
    num = 2 * abs(rd1 * rc2) ** 2 + 2 * abs(rc1 * rd2) ** 2
    if den == 0 and num == 0:
        raise ValueError("fidelity undefined when every reflection path vanishes")
    if den == 0:
        return 0.0
    return 1 / math.sqrt(1 + num / den)


def efficiency_psi_plus_two_spin(c1: ContrastPair, c2: ContrastPair) -> float:
    rc1, rd1 = _as_complex(c1)
    rc2, rd2 = _as_complex(c2)
    return abs(rd1 * rd2 + rc1 * rc2) ** 2 / 4


def ghz_efficiency(n: int) -> float:
    """Per-outcome efficiency 2^-n for n photons off one spin with ideal contrast."""
    if n < 2:
        raise ValueError("GHZ scaling needs n >= 2")
    return 2.0**-n
