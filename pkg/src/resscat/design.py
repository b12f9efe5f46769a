"""
Cavity design for resonance scattering.

Energies are in μeV except ``DesignSpec.omega_photon``, which is the optical
transition energy in eV (the natural unit for it). Q-factor helpers take both
arguments in the same unit.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional

from scipy import constants as const

from .cavity import CavitySystem, required_kappa_T
from .errors import InfeasibleLoss, NoStrongCoupling
from .protocols import ContrastPair, efficiency_psi_minus, efficiency_psi_plus, fidelity_psi_plus

__all__ = [
    "UEV_PER_EV",
    "UEV_PER_GHZ",
    "DesignSpec",
    "DesignReport",
    "q_factor",
    "kappa_T_from_q",
    "solve_resonance_scattering",
    "strong_coupling_kappa_T",
    "g_from_mode_volume",
    "PRESETS",
    "preset",
    "ghz_to_uev",
]

UEV_PER_EV = 1e6
# h in μeV per GHz (exact SI value of h / e)
UEV_PER_GHZ = const.h / const.e * 1e9 * 1e6


def ghz_to_uev(f_ghz: float) -> float:
    if not math.isfinite(f_ghz):
        raise ValueError("frequency must be finite")
    return f_ghz * UEV_PER_GHZ


def q_factor(omega_photon: float, kappa_T: float) -> float:
    """Quality factor ω / κ_T (both arguments in the same energy unit)."""
    if not (omega_photon > 0 and kappa_T > 0):
        raise ValueError("omega_photon and kappa_T must be positive")
    return omega_photon / kappa_T


def kappa_T_from_q(omega_photon: float, q: float) -> float:
    if not (omega_photon > 0 and q > 0):
        raise ValueError("omega_photon and q must be positive")
    return omega_photon / q


def strong_coupling_kappa_T(g: float, gamma: float) -> float:
    """Largest total linewidth satisfying g > κ_T + γ, i.e. the threshold g - γ."""
    if not (g > 0 and gamma > 0):
        raise ValueError("g and gamma must be positive")
    if g <= gamma:
        raise NoStrongCoupling(f"g={g} does not exceed gamma={gamma}")
    return g - gamma


def g_from_mode_volume(f: float, V: float, epsilon_r: float = 1.0) -> float:
    """Coupling (μeV) from oscillator strength and mode volume.

    Uses ħg = ħ sqrt(e² f / (4 ε0 ε_r m_e V)) with V in μm³. The estimate is
    sensitive to the chosen ε_r and to field placement, so treat it as an
    order-of-magnitude tool; presets keep their quoted g separately.
    """
    if not (f > 0 and V > 0 and epsilon_r > 0):
        raise ValueError("f, V and epsilon_r must be positive")
    volume_m3 = V * 1e-18
    omega = math.sqrt(const.e**2 * f / (4 * const.epsilon_0 * epsilon_r * const.m_e * volume_m3))
    return const.hbar * omega / const.e * UEV_PER_EV


@dataclass(frozen=True)
class DesignSpec:
    gamma: float
    kappa_s: float
    omega_photon: float
    g: Optional[float] = None
    oscillator_strength: Optional[float] = None
    mode_volume: Optional[float] = None
    relative_permittivity: Optional[float] = None

    def __post_init__(self):
        for field in dataclasses.fields(self):
            v = getattr(self, field.name)
            if v is None:
                continue
            if not math.isfinite(v):
                raise ValueError(f"{field.name} must be finite")
            if field.name == "kappa_s":
                if v < 0:
                    raise ValueError("kappa_s must be non-negative")
            elif v <= 0:
                raise ValueError(f"{field.name} must be positive")

    def coupling(self) -> float:
        """``g`` if given, otherwise the mode-volume estimate."""
        if self.g is not None:
            return self.g
        if self.oscillator_strength is None or self.mode_volume is None:
            raise ValueError("need g, or oscillator_strength and mode_volume to estimate it")
        return g_from_mode_volume(
            self.oscillator_strength, self.mode_volume, self.relative_permittivity or 1.0
        )

    def replace(self, **changes) -> "DesignSpec":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class DesignReport:
    g: float
    gamma: float
    kappa_T: float
    kappa: float
    kappa_s: float
    q_factor: float
    kappa_ratio: float
    r_c: float
    r_d: float
    fidelity_psi_plus: float
    efficiency_psi_plus: float
    efficiency_psi_minus: float

    def system(self) -> CavitySystem:
        return CavitySystem(self.kappa, self.kappa_s, self.g, self.gamma)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def solve_resonance_scattering(spec: DesignSpec) -> DesignReport:
    """Pick κ so that the cavity meets g² = κ_T γ / 4 given the side loss.

    Raises
    ------
    InfeasibleLoss
        If κ_s alone is at least the required κ_T, leaving no room for
        input/output coupling.
    """
    g = spec.coupling()
    kappa_T = required_kappa_T(g, spec.gamma)
    kappa = kappa_T - spec.kappa_s
    if kappa <= 0:
        raise InfeasibleLoss(
            f"kappa_s={spec.kappa_s} μeV leaves no input coupling: resonance scattering "
            f"needs kappa_T={kappa_T:.6g} μeV"
        )
    sys = CavitySystem(kappa, spec.kappa_s, g, spec.gamma)
    contrast = ContrastPair.from_system(sys)
    return DesignReport(
        g=g,
        gamma=spec.gamma,
        kappa_T=kappa_T,
        kappa=kappa,
        kappa_s=spec.kappa_s,
        q_factor=q_factor(spec.omega_photon * UEV_PER_EV, kappa_T),
        kappa_ratio=kappa / spec.kappa_s if spec.kappa_s > 0 else math.inf,
        r_c=contrast.r_c.real,
        r_d=contrast.r_d.real,
        fidelity_psi_plus=fidelity_psi_plus(contrast),
        efficiency_psi_plus=efficiency_psi_plus(contrast),
        efficiency_psi_minus=efficiency_psi_minus(contrast),
    )


# Micropillar: γ at its quoted upper bound, κ_s = the full measured linewidth
# (sidewall-loss limited), photon energy chosen so 180 μeV <-> Q = 7350.
# NV photonic crystal: 637 nm ZPL, fabricated Q ≈ 700, κ_s assumed negligible.
PRESETS = {
    "pillar_reithmaier": DesignSpec(gamma=10.0, kappa_s=180.0, omega_photon=1.323, g=80.0),
    "nv_photonic_crystal": DesignSpec(
        gamma=0.1,
        kappa_s=0.0,
        omega_photon=1.946,
        g=13.5,
        oscillator_strength=0.12,
        mode_volume=0.13,
    ),
}

FABRICATED_Q = {"pillar_reithmaier": 7350.0, "nv_photonic_crystal": 700.0}


def preset(name: str) -> DesignSpec:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
