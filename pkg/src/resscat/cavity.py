"""
Reflectivity of a single-sided dipole-cavity system.

All rates, couplings and frequencies are energies in μeV (ħ = 1). The
reflection amplitude is returned as a complex number (or a complex ndarray
when ``omega`` is an array); use ``abs`` and ``np.angle`` for magnitude and
phase.

On resonance (ω = ω_c = ω_d) and with g² = κ_T γ / 4 the amplitudes reduce to

    r_d = κ_s / κ_T          r_c = (κ_s - κ) / κ_T

which the test suite uses as an independent oracle.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .errors import DipoleCavityDetuned

__all__ = [
    "CavitySystem",
    "reflectivity",
    "empty_cavity_reflectivity",
    "resonant_contrast",
    "resonance_scattering_g",
    "required_kappa_T",
    "is_resonance_scattering",
]


def _check_finite(**values):
    for name, v in values.items():
        if not np.all(np.isfinite(v)):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class CavitySystem:
    """Rate constants and resonances of a dipole coupled to a single-sided cavity.

    Parameters
    ----------
    kappa : float
        Decay through the input/output mirror (μeV).
    kappa_s : float
        Decay into loss modes: side scattering, back-mirror transmission,
        absorption (μeV).
    g : float
        Dipole-cavity coupling (μeV).
    gamma : float
        Dipole linewidth in bulk dielectric (μeV).
    omega_c, omega_d : float
        Cavity and dipole resonance (μeV). Only differences with the probe
        frequency matter, so the default origin is 0.
    """

    kappa: float
    kappa_s: float
    g: float
    gamma: float
    omega_c: float = 0.0
    omega_d: float = 0.0

    def __post_init__(self):
        _check_finite(**dataclasses.asdict(self))
        if self.kappa <= 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if self.kappa_s < 0:
            raise ValueError(f"kappa_s must be non-negative, got {self.kappa_s}")
        if self.gamma <= 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.g < 0:
            raise ValueError(f"g must be non-negative, got {self.g}")

    @property
    def kappa_T(self) -> float:
        """Total cavity linewidth κ + κ_s."""
        return self.kappa + self.kappa_s

    @classmethod
    def at_resonance_scattering(cls, kappa, kappa_s, gamma, omega_c=0.0, omega_d=None):
        """Build a system whose coupling satisfies g² = κ_T γ / 4."""
        g = resonance_scattering_g(kappa + kappa_s, gamma)
        return cls(kappa, kappa_s, g, gamma, omega_c, omega_c if omega_d is None else omega_d)

    def replace(self, **changes) -> "CavitySystem":
        return dataclasses.replace(self, **changes)


def reflectivity(sys: CavitySystem, omega):
    """Complex reflection amplitude of the dipole-coupled cavity at probe frequency ``omega``.

    Accepts a scalar or an array of frequencies (μeV).
    """
    omega = np.asarray(omega, dtype=float)
    _check_finite(omega=omega)
    dipole = 1j * (sys.omega_d - omega) + sys.gamma / 2
    cavity = 1j * (sys.omega_c - omega) + sys.kappa_T / 2
    r = 1 - sys.kappa * dipole / (dipole * cavity + sys.g**2)
    return complex(r) if np.ndim(r) == 0 else r


def empty_cavity_reflectivity(sys: CavitySystem, omega):
    """Reflection amplitude with no dipole present (g = 0); ignores g, γ and ω_d."""
    omega = np.asarray(omega, dtype=float)
    _check_finite(omega=omega)
    r = 1 - sys.kappa / (1j * (sys.omega_c - omega) + sys.kappa_T / 2)
    return complex(r) if np.ndim(r) == 0 else r


def resonant_contrast(sys: CavitySystem) -> tuple[complex, complex]:
    """Return ``(r_c, r_d)`` evaluated at ω = ω_c = ω_d.

    Raises
    ------
    DipoleCavityDetuned
        If the dipole and cavity resonances differ.
    """
    if sys.omega_c != sys.omega_d:
        raise DipoleCavityDetuned(
            f"omega_c={sys.omega_c} and omega_d={sys.omega_d} differ; "
            "use reflectivity() for detuned dipoles"
        )
    return (
        empty_cavity_reflectivity(sys, sys.omega_c),
        reflectivity(sys, sys.omega_c),
    )


def resonance_scattering_g(kappa_T: float, gamma: float) -> float:
    """Coupling that matches the cavity-modified emission rate to the bare linewidth."""
    if not (kappa_T > 0 and gamma > 0):
        raise ValueError("kappa_T and gamma must both be positive")
    return math.sqrt(kappa_T * gamma) / 2


def required_kappa_T(g: float, gamma: float) -> float:
    """Total linewidth 4g²/γ needed for resonance scattering at coupling ``g``."""
    if not (g > 0 and gamma > 0):
        raise ValueError("g and gamma must both be positive")
    return 4 * g**2 / gamma


def is_resonance_scattering(sys: CavitySystem, rel_tol: float = 1e-6) -> bool:
    if not 0 < rel_tol < 1:
        raise ValueError("rel_tol must lie in (0, 1)")
    target = sys.kappa_T * sys.gamma
    return abs(4 * sys.g**2 - target) <= rel_tol * target
