"""Exception types raised across the package."""


class DipoleCavityDetuned(ValueError):
    """Zero-detuning evaluation requested but the dipole and cavity differ."""


class InfeasibleLoss(ValueError):
    """Side loss alone already exceeds the linewidth needed for resonance scattering."""


class NoStrongCoupling(ValueError):
    """Coupling rate cannot exceed the dipole linewidth, so no strong-coupling threshold exists."""


class ConfigError(ValueError):
    """Malformed or incomplete run configuration."""
