"""Entanglement generation by resonance scattering in low-Q microcavities."""

from .cavity import (
    CavitySystem,
    empty_cavity_reflectivity,
    is_resonance_scattering,
    reflectivity,
    required_kappa_T,
    resonance_scattering_g,
    resonant_contrast,
)
from .design import (
    DesignReport,
    DesignSpec,
    g_from_mode_volume,
    ghz_to_uev,
    kappa_T_from_q,
    preset,
    q_factor,
    solve_resonance_scattering,
    strong_coupling_kappa_T,
)
from .errors import ConfigError, DipoleCavityDetuned, InfeasibleLoss, NoStrongCoupling
from .herald import HeraldConfig, expected_attempts, simulate_cluster, simulate_pair
from .protocols import (
    ContrastPair,
    ProtocolResult,
    efficiency_psi_minus,
    efficiency_psi_plus,
    efficiency_psi_plus_two_spin,
    fidelity_psi_plus,
    fidelity_psi_plus_two_spin,
    ghz_efficiency,
    ghz_protocol,
    interference_herald,
    photon_photon_protocol,
    spin_spin_protocol,
)

__version__ = "0.1.0"
