import numpy as np
import pytest


def coupled_mode_reflectivity(kappa, kappa_s, g, gamma, omega_c, omega_d, omega):
    """Reflection from the linearised coupled-mode equations, solved as a 2x2 system.

    (iΔ_c + κ_T/2) a + g σ = √κ a_in
    -g a + (iΔ_d + γ/2) σ = 0
    a_out = a_in - √κ a
    """
    m = np.array(
        [
            [1j * (omega_c - omega) + (kappa + kappa_s) / 2, g],
            [-g, 1j * (omega_d - omega) + gamma / 2],
        ]
    )
    a, _ = np.linalg.solve(m, np.array([np.sqrt(kappa), 0.0]))
    return 1 - np.sqrt(kappa) * a


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line and assert it."""

    def check(tag: str, description: str, ok: bool, detail: str = ""):
        line = f"{tag} {'PASS' if ok else 'FAIL'}  {description}"
        if detail:
            line += f"  [{detail}]"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return check


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
