"""
Command-line front end.

    resscat <command> [--config PATH] [--set key=value ...] [--output PATH]
                      [--format csv|json] [--seed N]

Commands: reflectivity-sweep, loss-sweep, protocol, design, herald, presets.

Parameters come from a flat ``key = value`` config file, overridden by
repeated ``--set`` flags. Energies accept a unit suffix (uev, mev, ev, ghz,
mhz) and default to μeV. Output is CSV (header row, CRLF line ends) or JSON
with sorted keys; numbers carry 12 significant digits and non-finite values
are written as the strings ``inf``/``nan``.

Exit codes: 0 success, 2 configuration error, 3 infeasible design.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import design, herald, protocols
from .cavity import CavitySystem, empty_cavity_reflectivity, reflectivity, resonance_scattering_g
from .errors import ConfigError, InfeasibleLoss

__all__ = ["Table", "parse_energy", "load_config", "run", "main", "COMMANDS"]

_UNITS = {
    "uev": 1.0,
    "μev": 1.0,
    "µev": 1.0,
    "mev": 1e3,
    "ev": 1e6,
    "ghz": design.UEV_PER_GHZ,
    "mhz": design.UEV_PER_GHZ * 1e-3,
}
_ENERGY_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([a-zμµ]*)\s*$", re.IGNORECASE)


def parse_energy(text, default_unit: str = "uev") -> float:
    """Parse ``"2.38 meV"``, ``"2.88GHz"`` or a bare number into μeV."""
    if isinstance(text, (int, float)):
        return float(text) * _UNITS[default_unit]
    m = _ENERGY_RE.match(str(text))
    if not m:
        raise ConfigError(f"cannot parse energy {text!r}")
    unit = (m.group(2) or default_unit).lower()
    if unit not in _UNITS:
        raise ConfigError(f"unknown energy unit {m.group(2)!r} in {text!r}; use one of uev, mev, ev, ghz, mhz")
    return float(m.group(1)) * _UNITS[unit]


def _parse_complex(text) -> complex:
    try:
        return complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ConfigError(f"cannot parse complex number {text!r}") from None


def load_config(path=None, overrides=()) -> dict[str, str]:
    params: dict[str, str] = {}
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                lines = fh.readlines()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        for n, line in enumerate(lines, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{n}: expected 'key = value'")
            k, v = line.split("=", 1)
            params[k.strip()] = v.strip()
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = v.strip()
    return params


class _Params:
    """Typed, tracked access to the raw string parameters."""

    def __init__(self, raw: dict[str, str], command: str):
        self.raw = raw
        self.command = command

    def has(self, key):
        return key in self.raw

    def _get(self, key, default):
        if key in self.raw:
            return self.raw[key]
        if default is _REQUIRED:
            raise ConfigError(f"{self.command}: missing parameter '{key}'")
        return default

    def energy(self, key, default=None, unit="uev"):
        v = self._get(key, default)
        return None if v is None else parse_energy(v, unit)

    def number(self, key, default=None):
        v = self._get(key, default)
        if v is None:
            return None
        try:
            return float(v)
        except ValueError:
            raise ConfigError(f"{self.command}: parameter '{key}' must be a number, got {v!r}") from None

    def integer(self, key, default=None):
        v = self.number(key, default)
        if v is None:
            return None
        if v != int(v):
            raise ConfigError(f"{self.command}: parameter '{key}' must be an integer")
        return int(v)

    def complex(self, key, default=None):
        v = self._get(key, default)
        return None if v is None else _parse_complex(v)

    def text(self, key, default=None):
        return self._get(key, default)


_REQUIRED = object()


@dataclass
class Table:
    columns: list[str]
    rows: list[list] = field(default_factory=list)


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
        return float(f"{x:.12g}")
    return x


def _csv_cell(x):
    x = _fmt(x)
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def render(result, fmt: str) -> str:
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unknown format {fmt!r}")
    if isinstance(result, Table):
        if fmt == "json":
            records = [{c: _fmt(v) for c, v in zip(result.columns, row)} for row in result.rows]
            return json.dumps(records, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(result.columns)
        for row in result.rows:
            w.writerow([_csv_cell(v) for v in row])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps({k: _fmt(v) for k, v in result.items()}, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    return render(Table(["key", "value"], [[k, v] for k, v in sorted(result.items())]), "csv")


def _sweep_values(p: _Params, start, stop, points, scale) -> np.ndarray:
    if p.has("values"):
        try:
            return np.array([float(v) for v in p.text("values").split(",")])
        except ValueError:
            raise ConfigError(f"{p.command}: 'values' must be comma-separated numbers") from None
    start = p.number("start", start)
    stop = p.number("stop", stop)
    points = p.integer("points", points)
    scale = p.text("scale", scale)
    if points < 2:
        raise ConfigError(f"{p.command}: points must be at least 2")
    if scale == "linear":
        return np.linspace(start, stop, points)
    if scale == "log":
        if start <= 0 or stop <= 0:
            raise ConfigError(f"{p.command}: log sweep needs positive bounds")
        return np.logspace(math.log10(start), math.log10(stop), points)
    raise ConfigError(f"{p.command}: scale must be 'linear' or 'log', got {scale!r}")


def _preset_spec(p: _Params):
    name = p.text("preset")
    try:
        return design.preset(name)
    except KeyError as exc:
        raise ConfigError(str(exc.args[0])) from None


def _system(p: _Params) -> CavitySystem:
    if p.has("preset"):
        return design.solve_resonance_scattering(_preset_spec(p)).system()
    kappa = p.energy("kappa", _REQUIRED)
    kappa_s = p.energy("kappa_s", "0")
    if p.has("gamma"):
        gamma = p.energy("gamma")
    elif p.has("gamma_ratio"):
        gamma = p.number("gamma_ratio") * kappa
    else:
        raise ConfigError(f"{p.command}: missing parameter 'gamma' (or 'gamma_ratio')")
    g_raw = p.text("g", "rs")
    g = resonance_scattering_g(kappa + kappa_s, gamma) if g_raw == "rs" else parse_energy(g_raw)
    omega_c = p.energy("omega_c", "0")
    omega_d = p.energy("omega_d", None)
    return CavitySystem(kappa, kappa_s, g, gamma, omega_c, omega_c if omega_d is None else omega_d)


def cmd_reflectivity_sweep(p: _Params) -> Table:
    """Detuning sweep of the empty and dipole-coupled reflection amplitudes.

    ``sweep_unit`` (uev, kappa, gamma) sets the unit of start/stop and of the
    detuning column; detuning is ω - ω_c.
    """
    sys_ = _system(p)
    unit = p.text("sweep_unit", "uev")
    scale_of = {"uev": 1.0, "kappa": sys_.kappa, "gamma": sys_.gamma}
    if unit not in scale_of:
        raise ConfigError(f"{p.command}: sweep_unit must be uev, kappa or gamma")
    det = _sweep_values(p, -5.0, 5.0, 201, "linear")
    omega = sys_.omega_c + det * scale_of[unit]
    rc = empty_cavity_reflectivity(sys_, omega)
    rd = reflectivity(sys_, omega)
    rows = [
        [d, abs(a), abs(b), float(np.angle(a)), float(np.angle(b))]
        for d, a, b in zip(det, rc, rd)
    ]
    return Table(["detuning", "abs_r_c", "abs_r_d", "phase_c", "phase_d"], rows)


def cmd_loss_sweep(p: _Params) -> Table:
    """Sweep κ/κ_s at fixed κ_T under the resonance-scattering condition."""
    kappa_T = p.energy("kappa_T", "1")
    gamma = p.energy("gamma", None)
    if gamma is None:
        gamma = p.number("gamma_ratio", "0.1") * kappa_T
    ratios = _sweep_values(p, 1e-3, 1e3, 61, "log")
    if np.any(ratios <= 0):
        raise ConfigError(f"{p.command}: kappa ratios must be positive")
    rows = []
    for x in ratios:
        kappa = kappa_T * x / (1 + x)
        sys_ = CavitySystem.at_resonance_scattering(kappa, kappa_T - kappa, gamma)
        c = protocols.ContrastPair.from_system(sys_)
        rows.append([
            x, abs(c.r_c), abs(c.r_d),
            protocols.fidelity_psi_plus(c),
            protocols.efficiency_psi_plus(c),
            protocols.efficiency_psi_minus(c),
        ])
    return Table(["kappa_ratio", "abs_r_c", "abs_r_d", "F_psi_plus", "eta_psi_plus", "eta_psi_minus"], rows)


def _contrast(p: _Params, suffix=""):
    if p.has("preset"):
        r = design.solve_resonance_scattering(_preset_spec(p))
        return protocols.ContrastPair(r.r_c, r.r_d)
    r_c = p.complex("r_c" + suffix, None if suffix else _REQUIRED)
    r_d = p.complex("r_d" + suffix, None if suffix else _REQUIRED)
    if r_c is None or r_d is None:
        return None
    return protocols.ContrastPair(r_c, r_d)


def cmd_protocol(p: _Params) -> Table:
    name = p.text("protocol", "photon-photon")
    c1 = _contrast(p)
    c2 = _contrast(p, "2") or c1
    if name == "photon-photon":
        results = protocols.photon_photon_protocol(c1)
    elif name == "spin-spin":
        results = protocols.spin_spin_protocol(c1, c2)
    elif name == "ghz":
        results = protocols.ghz_protocol(c1, p.integer("n", "3"))
    elif name == "interference":
        results = protocols.interference_herald(c1, c2)
    else:
        raise ConfigError(f"protocol: unknown protocol {name!r}; use photon-photon, spin-spin, ghz or interference")
    rows = [
        [name, r.outcome_label, r.fidelity, r.efficiency, r.branch_probability, r.herald_weight]
        for r in results
    ]
    return Table(["protocol", "outcome", "fidelity", "efficiency", "branch_probability", "herald_weight"], rows)


def cmd_design(p: _Params) -> dict:
    if p.has("preset"):
        spec = _preset_spec(p)
        fabricated_q = design.FABRICATED_Q.get(p.text("preset"))
    else:
        omega = p.energy("omega_photon", _REQUIRED, unit="ev") / design.UEV_PER_EV
        spec = design.DesignSpec(
            gamma=p.energy("gamma", _REQUIRED),
            kappa_s=p.energy("kappa_s", "0"),
            omega_photon=omega,
            g=p.energy("g", None),
            oscillator_strength=p.number("oscillator_strength", None),
            mode_volume=p.number("mode_volume", None),
            relative_permittivity=p.number("relative_permittivity", None),
        )
        fabricated_q = p.number("fabricated_q", None)
    overrides = {}
    for key in ("gamma", "kappa_s", "g"):
        if p.has(key) and p.has("preset"):
            overrides[key] = p.energy(key)
    if overrides:
        spec = spec.replace(**overrides)
    report = design.solve_resonance_scattering(spec)
    out = report.as_dict()
    out["omega_photon_ev"] = spec.omega_photon
    omega_uev = spec.omega_photon * design.UEV_PER_EV
    if report.g > spec.gamma:
        k_sc = design.strong_coupling_kappa_T(report.g, spec.gamma)
        out["strong_coupling_kappa_T"] = k_sc
        out["strong_coupling_q_factor"] = design.q_factor(omega_uev, k_sc)
    if spec.oscillator_strength and spec.mode_volume:
        out["g_mode_volume_estimate"] = design.g_from_mode_volume(
            spec.oscillator_strength, spec.mode_volume, spec.relative_permittivity or 1.0
        )
    if fabricated_q:
        out["fabricated_q"] = fabricated_q
        out["q_reduction"] = fabricated_q / report.q_factor
    return out


def cmd_herald(p: _Params, seed) -> Table:
    if seed is None:
        seed = p.integer("seed", None)
    if seed is None:
        raise ConfigError("herald: an explicit seed is required (--seed N or seed = N)")
    try:
        cfg = herald.HeraldConfig(
            success_probability=p.number("success_probability", _REQUIRED),
            seed=seed,
            attempt_period=p.number("attempt_period", "1"),
            detector_efficiency=p.number("detector_efficiency", "1"),
            coherence_time=p.number("coherence_time", "1"),
            n_spins=p.integer("n_spins", "4"),
            max_attempts=p.integer("max_attempts", "10000"),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"herald: {exc}") from None
    trials = p.integer("trials", "100000")
    rows = []
    stats = [herald.summarize_pairs(cfg, trials), herald.summarize_cluster(cfg, trials)]
    columns = list(stats[0])
    for s in stats:
        rows.append([s[c] for c in columns])
    return Table(columns, rows)


def cmd_preset_list(p: _Params) -> Table:
    return Table(["name"], [[n] for n in sorted(design.PRESETS)])


COMMANDS = {
    "reflectivity-sweep": cmd_reflectivity_sweep,
    "loss-sweep": cmd_loss_sweep,
    "protocol": cmd_protocol,
    "design": cmd_design,
    "herald": cmd_herald,
    "presets": cmd_preset_list,
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="resscat", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", metavar="PATH")
        sp.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", dest="overrides")
        sp.add_argument("--output", metavar="PATH")
        sp.add_argument("--format", choices=("csv", "json"))
        sp.add_argument("--seed", type=int)
    return parser


def run(argv) -> tuple[str, str | None]:
    """Execute a command; return the rendered output and the ``--output`` path."""
    args = _parser().parse_args(argv)
    params = _Params(load_config(args.config, args.overrides), args.command)
    fmt = args.format or ("json" if args.command == "design" else "csv")
    try:
        if args.command == "herald":
            result = cmd_herald(params, args.seed)
        else:
            result = COMMANDS[args.command](params)
    except (ConfigError, InfeasibleLoss):
        raise
    except ValueError as exc:
        raise ConfigError(f"{args.command}: {exc}") from None
    return render(result, fmt), args.output


def main(argv=None) -> int:
    try:
        text, output = run(sys.argv[1:] if argv is None else argv)
    except InfeasibleLoss as exc:
        print(f"error: infeasible design: {exc}", file=sys.stderr)
        return 3
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse
        return 0 if exc.code == 0 else 2
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
