import csv
import io
import json
import math

import pytest

from resscat.cli import load_config, main, parse_energy, run
from resscat.errors import ConfigError


def table(argv):
    text, _ = run(argv)
    return list(csv.DictReader(io.StringIO(text)))


def as_json(argv):
    text, _ = run(argv)
    return json.loads(text)


class TestParsing:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("80", 80.0),
            ("2.38 meV", 2380.0),
            ("2.38mev", 2380.0),
            ("1.323 eV", 1.323e6),
            ("180 uev", 180.0),
            ("180 μeV", 180.0),
            ("2.88 GHz", 11.910722967),
            ("1000 MHz", 4.135667696),
            ("-1e2", -100.0),
        ],
    )
    def test_energy(self, text, expected):
        assert parse_energy(text) == pytest.approx(expected, rel=1e-9)

    @pytest.mark.parametrize("text", ["abc", "3 furlongs", "1..2"])
    def test_bad_energy(self, text):
        with pytest.raises(ConfigError):
            parse_energy(text)

    def test_config_file_and_overrides(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# pillar\nkappa = 2.38 meV\nkappa_s = 180\n\ngamma=10  # upper bound\n", encoding="utf-8")
        params = load_config(cfg, ["kappa_s=200"])
        assert params == {"kappa": "2.38 meV", "kappa_s": "200", "gamma": "10"}

    def test_malformed_config(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("kappa 2\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(cfg)


class TestReflectivitySweep:
    def test_lossless_dip(self):
        rows = table([
            "reflectivity-sweep", "--set", "kappa=1", "--set", "gamma_ratio=0.1",
            "--set", "sweep_unit=gamma", "--set", "start=-5", "--set", "stop=5", "--set", "points=101",
        ])
        assert len(rows) == 101
        zero = next(r for r in rows if float(r["detuning"]) == 0)
        assert float(zero["abs_r_d"]) < 1e-9
        assert min(float(r["abs_r_d"]) for r in rows) == float(zero["abs_r_d"])
        assert all(float(r["abs_r_c"]) == pytest.approx(1, abs=1e-11) for r in rows)

    def test_empty_cavity_column(self):
        rows = table(["reflectivity-sweep", "--set", "kappa=3", "--set", "gamma=0.2", "--set", "g=0",
                      "--set", "start=-20", "--set", "stop=20"])
        assert all(float(r["abs_r_c"]) == pytest.approx(1, abs=1e-11) for r in rows)
        assert list(rows[0]) == ["detuning", "abs_r_c", "abs_r_d", "phase_c", "phase_d"]

    def test_lossy_pillar(self):
        rows = table(["reflectivity-sweep", "--set", "preset=pillar_reithmaier", "--set", "points=5"])
        zero = rows[2]
        assert float(zero["detuning"]) == 0
        assert float(zero["abs_r_d"]) == pytest.approx(0.0703125, abs=1e-11)

    def test_bad_sweep(self):
        with pytest.raises(ConfigError):
            run(["reflectivity-sweep", "--set", "kappa=1", "--set", "gamma=0.1", "--set", "points=1"])
        with pytest.raises(ConfigError):
            run(["reflectivity-sweep", "--set", "kappa=1", "--set", "gamma=0.1", "--set", "scale=cubic"])


class TestLossSweep:
    def test_landmarks(self):
        rows = {float(r["kappa_ratio"]): r for r in table(["loss-sweep", "--set", "values=0.001,1,2,1000"])}
        assert float(rows[1]["abs_r_c"]) == 0
        assert float(rows[1]["F_psi_plus"]) == 1
        assert float(rows[1]["eta_psi_plus"]) == pytest.approx(0.015625, abs=1e-12)
        assert float(rows[2]["abs_r_c"]) == pytest.approx(float(rows[2]["abs_r_d"]), abs=1e-11)
        assert float(rows[2]["F_psi_plus"]) == pytest.approx(1 / math.sqrt(2), abs=1e-11)
        assert float(rows[0.001]["F_psi_plus"]) == pytest.approx(1 / math.sqrt(2), abs=1e-3)
        assert float(rows[0.001]["eta_psi_plus"]) == pytest.approx(1, abs=1e-2)

    def test_default_grid(self):
        rows = table(["loss-sweep"])
        assert len(rows) == 61
        assert float(rows[30]["kappa_ratio"]) == 1.0


class TestProtocol:
    def test_ideal(self):
        rows = table(["protocol", "--set", "r_c=1", "--set", "r_d=0"])
        assert [r["outcome"] for r in rows] == ["up", "down"]
        for r in rows:
            assert float(r["fidelity"]) == 1 and float(r["efficiency"]) == 0.25

    def test_preset_contrast(self):
        rows = table(["protocol", "--set", "preset=pillar_reithmaier"])
        assert float(rows[0]["fidelity"]) == pytest.approx(0.987045196577, abs=1e-11)

    @pytest.mark.parametrize("name,labels", [("spin-spin", ["H", "V"]), ("interference", ["c", "d"]), ("ghz", ["up", "down"])])
    def test_other_protocols(self, name, labels):
        rows = table(["protocol", "--set", f"protocol={name}", "--set", "r_c=1", "--set", "r_d=0"])
        assert [r["outcome"] for r in rows] == labels
        assert all(float(r["fidelity"]) == 1 for r in rows)

    def test_complex_contrast(self):
        rows = table(["protocol", "--set", "r_c=0.5+0.5i", "--set", "r_d=0.1j"])
        assert 0 < float(rows[0]["fidelity"]) <= 1

    def test_unknown_protocol(self):
        with pytest.raises(ConfigError):
            run(["protocol", "--set", "protocol=teleport", "--set", "r_c=1", "--set", "r_d=0"])


class TestDesign:
    def test_pillar(self):
        d = as_json(["design", "--set", "preset=pillar_reithmaier"])
        assert d["q_factor"] == pytest.approx(517, abs=1)
        assert d["kappa_T"] == 2560
        assert d["strong_coupling_kappa_T"] == 70

    def test_nv(self):
        d = as_json(["design", "--set", "preset=nv_photonic_crystal"])
        assert d["kappa_ratio"] == "inf"
        assert d["q_reduction"] >= 2.5

    def test_explicit_parameters(self):
        d = as_json(["design", "--set", "gamma=10", "--set", "g=80", "--set", "kappa_s=0.18 meV",
                     "--set", "omega_photon=1.323 eV"])
        assert d["kappa"] == pytest.approx(2380)

    def test_csv(self):
        rows = table(["design", "--format", "csv", "--set", "preset=pillar_reithmaier"])
        assert {r["key"]: r["value"] for r in rows}["kappa"] == "2380"


class TestHerald:
    ARGS = ["herald", "--set", "success_probability=0.138", "--set", "trials=20000", "--seed", "42"]

    def test_statistics(self):
        rows = {r["stage"]: r for r in table(self.ARGS)}
        pair = rows["pair"]
        assert abs(float(pair["mean_attempts"]) - 1 / 0.138) < 3 * float(pair["stderr_attempts"])
        assert 10 <= float(rows["cluster"]["median_time_ns"]) <= 30

    def test_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(self.ARGS + ["--output", str(a)]) == 0
        assert main(self.ARGS + ["--output", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_seed_from_config(self):
        args = ["herald", "--set", "success_probability=0.5", "--set", "trials=100", "--set", "seed=3"]
        assert run(args)[0] == run(args[:-2] + ["--seed", "3"])[0]


class TestEntryPoint:
    def test_presets(self, capsys):
        assert main(["presets"]) == 0
        assert capsys.readouterr().out == "name\r\nnv_photonic_crystal\r\npillar_reithmaier\r\n"

    def test_presets_json(self, capsys):
        assert main(["presets", "--format", "json"]) == 0
        assert [r["name"] for r in json.loads(capsys.readouterr().out)] == ["nv_photonic_crystal", "pillar_reithmaier"]

    @pytest.mark.parametrize(
        "argv",
        [
            ["design"],
            ["design", "--set", "preset=toroid"],
            ["herald", "--set", "success_probability=0.2"],
            ["herald", "--set", "success_probability=2", "--seed", "1"],
            ["reflectivity-sweep", "--set", "kappa=1"],
            ["reflectivity-sweep", "--set", "kappa=1 parsec", "--set", "gamma=1"],
            ["protocol", "--set", "r_c=2", "--set", "r_d=0"],
            ["loss-sweep", "--set", "values=a,b"],
            ["bogus"],
        ],
    )
    def test_config_errors_exit_2(self, argv, capsys):
        assert main(argv) == 2
        assert "error" in capsys.readouterr().err.lower() or argv == ["bogus"]

    def test_missing_parameter_named(self, capsys):
        main(["design", "--set", "gamma=10"])
        assert "omega_photon" in capsys.readouterr().err

    def test_infeasible_exit_3(self, capsys):
        argv = ["design", "--set", "gamma=10", "--set", "g=80", "--set", "kappa_s=3 meV", "--set", "omega_photon=1.323ev"]
        assert main(argv) == 3
        assert "infeasible" in capsys.readouterr().err

    def test_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "pillar.cfg"
        cfg.write_text("preset = pillar_reithmaier\n", encoding="utf-8")
        assert main(["design", "--config", str(cfg)]) == 0
        assert json.loads(capsys.readouterr().out)["q_factor"] == pytest.approx(516.796875)
