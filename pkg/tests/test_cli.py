"""CLI behavior: flags, config precedence, exit codes, output wiring."""

import csv
import io
import json

import pytest

from topo_thermo.cli import (
    EXIT_CONFIG,
    EXIT_NUMERIC,
    EXIT_OK,
    WORKERS_ENV_VAR,
    ConfigError,
    assemble_config,
    cli_main,
)
from topo_thermo.figures import FIGURE_PRESETS, build_figure_spec


def run_cli(args, capsys):
    code = cli_main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


MODEL_ARGS = ["--n-cells", "50", "--v", "0.3", "--w", "0.5"]


def test_qfi_at_hopping_crossing_reports_tiny_power(capsys):
    code, out, _ = run_cli(
        ["qfi", *MODEL_ARGS, "--z", "0.5", "--temperature", "0.1"], capsys
    )
    assert code == EXIT_OK
    (row,) = read_csv(out)
    assert float(row["i_p"]) <= 1e-6
    assert row["mode"] == "" and row["P"] == ""


def test_polarization_literal_is_undefined_for_periodic_ring(capsys):
    code, out, _ = run_cli(
        [
            "polarization", "--mode", "literal", *MODEL_ARGS,
            "--z", "0", "--temperature", "0.1", "--boundary", "periodic",
        ],
        capsys,
    )
    assert code == EXIT_OK
    (row,) = read_csv(out)
    assert row["P_defined"] == "false"
    assert float(row["magnitude"]) <= 1e-10


def test_polarization_defaults_to_determinant_with_notice(capsys):
    code, out, err = run_cli(
        ["polarization", "--n-cells", "6", "--v", "0.1", "--w", "0.5", "--z", "0",
         "--temperature", "0.02"],
        capsys,
    )
    assert code == EXIT_OK
    (row,) = read_csv(out)
    assert row["mode"] == "determinant"
    assert "determinant" in err


def test_figure_2b_power_peaks_at_smallest_intracell_hopping(tmp_path, capsys):
    target = tmp_path / "fig2b.csv"
    code, _, _ = run_cli(["figure", "2b", "--out", str(target)], capsys)
    assert code == EXIT_OK
    rows = read_csv(target.read_text())
    assert len(rows) == 101
    best = max(rows, key=lambda row: float(row["i_p"]))
    assert float(best["v"]) == 0.0


def test_exit_codes_for_bad_invocations(capsys, tmp_path):
    assert run_cli(["warp"], capsys)[0] == EXIT_CONFIG
    assert run_cli(["qfi", "--frobnicate"], capsys)[0] == EXIT_CONFIG
    assert run_cli(["qfi", "--temperature", "0.1"], capsys)[0] == EXIT_CONFIG  # no model
    assert run_cli(["qfi", *MODEL_ARGS, "--z", "0"], capsys)[0] == EXIT_CONFIG  # no T
    assert (
        run_cli(["figure", "3b", "--out", str(tmp_path / "no" / "dir" / "x.csv")], capsys)[0]
        == EXIT_NUMERIC
    )


def test_modes_rejected_outside_polarization(tmp_path, capsys):
    config = tmp_path / "qfi.json"
    config.write_text(json.dumps({"modes": ["literal"]}))
    code, _, err = run_cli(
        ["qfi", "--config", str(config), *MODEL_ARGS, "--z", "0", "--temperature", "0.1"],
        capsys,
    )
    assert code == EXIT_CONFIG and "modes" in err


def test_bad_config_files_exit_2(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run_cli(["qfi", "--config", str(broken)], capsys)[0] == EXIT_CONFIG

    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"n_cells": 4, "flux": 1}))
    assert run_cli(["qfi", "--config", str(unknown)], capsys)[0] == EXIT_CONFIG

    assert run_cli(["qfi", "--config", str(tmp_path / "absent.json")], capsys)[0] == EXIT_CONFIG


def test_sweep_subcommand_from_config(tmp_path, capsys):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({
        "axes": {"T": [0.1, 0.5]},
        "n_cells": 5, "v": 0.3, "w": 0.5, "z": 0.0,
        "quantities": "qfi_matrix,interferometric_power,diagnostics",
        "format": "json",
    }))
    code, out, _ = run_cli(["sweep", "--config", str(config)], capsys)
    assert code == EXIT_OK
    rows = json.loads(out)
    assert [row["T"] for row in rows] == [0.1, 0.5]
    assert all(row["purity"] is not None for row in rows)


def test_sweep_axis_flag_overrides_config(tmp_path, capsys):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({
        "axes": {"T": [0.1, 0.5]},
        "n_cells": 4, "v": 0.3, "w": 0.5, "z": 0.0,
        "quantities": ["interferometric_power"],
    }))
    code, out, _ = run_cli(
        ["sweep", "--config", str(config), "--axis", "T=0.2:0.4:3"], capsys
    )
    assert code == EXIT_OK
    rows = read_csv(out)
    assert [row["T"] for row in rows] == ["0.2", "0.3", "0.4"]


def test_sweep_requires_axes_and_quantities(capsys):
    code, _, err = run_cli(["sweep", *MODEL_ARGS, "--z", "0"], capsys)
    assert code == EXIT_CONFIG and "axis" in err
    code, _, err = run_cli(
        ["sweep", *MODEL_ARGS, "--z", "0", "--axis", "T=0.1:0.5:2"], capsys
    )
    assert code == EXIT_CONFIG and "quantities" in err


def test_spectrum_subcommand(capsys):
    code, out, _ = run_cli(
        ["spectrum", "--n-cells", "3", "--v", "0.2", "--w", "0.7", "--z", "0.1"], capsys
    )
    assert code == EXIT_OK
    rows = read_csv(out)
    assert len(rows) == 6
    energies = [float(row["energy"]) for row in rows]
    assert energies == sorted(energies)

    code, out, _ = run_cli(
        ["spectrum", "--n-cells", "3", "--v", "0.2", "--w", "0.7", "--z", "0.1",
         "--eigenvectors", "--format", "json"],
        capsys,
    )
    assert code == EXIT_OK
    data = json.loads(out)
    assert len(data) == 6 and "c5" in data[0]


def test_frozen_figure_parameter_table():
    assert FIGURE_PRESETS == {
        "1a": {"quantity": "polarization", "fixed": {"v": 0.3, "w": 0.5}, "axes": ("T", "z")},
        "1b": {"quantity": "polarization", "fixed": {"v": 0.5, "w": 0.3}, "axes": ("T", "z")},
        "2a": {"quantity": "qfi", "fixed": {"w": 0.5, "z": 0.0}, "axes": ("T", "v")},
        "2b": {"quantity": "qfi", "fixed": {"w": 0.5, "z": 0.0, "T": 0.05}, "axes": ("v",)},
        "3a": {"quantity": "qfi", "fixed": {"v": 0.3, "w": 0.5}, "axes": ("T", "z")},
        "3b": {"quantity": "qfi", "fixed": {"v": 0.3, "w": 0.5, "T": 0.05}, "axes": ("z",)},
        "3c": {"quantity": "qfi", "fixed": {"v": 0.5, "w": 0.3}, "axes": ("T", "z")},
        "3d": {"quantity": "qfi", "fixed": {"v": 0.5, "w": 0.3, "T": 0.05}, "axes": ("z",)},
    }
    for figure_id, preset in FIGURE_PRESETS.items():
        spec = build_figure_spec(figure_id)
        spec.validate()
        assert spec.fixed["N"] == 50
        for name, grid in spec.axes:
            assert len(grid) == 101
            low, high = (0.01, 1.0) if name == "T" else (0.0, 1.0)
            assert grid[0] == low and grid[-1] == high
    with pytest.raises(ValueError):
        build_figure_spec("9z")


PRECEDENCE_CASES = [
    ("n_cells", 10, 20, 10, 20),
    ("v", 0.1, 0.9, 0.1, 0.9),
    ("w", 0.2, 0.8, 0.2, 0.8),
    ("z", 0.0, 0.4, 0.0, 0.4),
    ("boundary", "open", "periodic", "open", "periodic"),
    ("temperature", [0.2, 0.1], [0.5], [0.1, 0.2], [0.5]),
    ("modes", ["literal"], ["determinant"], ["literal"], ["determinant"]),
    ("axes", {"T": [0.1, 0.2]}, ["z=0:1:3"], [("T", (0.1, 0.2))],
     [("z", (0.0, 0.5, 1.0))]),
    ("quantities", "qfi_matrix", "diagnostics,qfi_matrix", ["qfi_matrix"],
     ["diagnostics", "qfi_matrix"]),
    ("label", "from-config", "from-flag", "from-config", "from-flag"),
    ("out", "a.csv", "b.csv", "a.csv", "b.csv"),
    ("format", "json", "csv", "json", "csv"),
    ("precision", 8, 6, 8, 6),
    ("workers", 3, 5, 3, 5),
    ("tau_mag", 1e-2, 1e-4, 1e-2, 1e-4),
    ("verbosity", 1, 2, 1, 2),
    ("eigenvectors", True, True, True, True),
]


@pytest.mark.parametrize("name,cfg,flag,cfg_want,flag_want", PRECEDENCE_CASES)
def test_flag_overrides_config_overrides_default(name, cfg, flag, cfg_want, flag_want):
    base = assemble_config("sweep", {}, {})
    from_config = assemble_config("sweep", {}, {name: cfg})
    from_flag = assemble_config("sweep", {name: flag}, {name: cfg})
    assert getattr(from_config, name) == cfg_want
    assert getattr(from_flag, name) == flag_want
    if name not in ("eigenvectors",):
        assert getattr(base, name) != cfg_want or getattr(base, name) != flag_want


def test_documented_defaults():
    config = assemble_config("qfi", {}, {})
    assert config.boundary == "periodic"
    assert config.out == "-"
    assert config.format == "csv"
    assert config.precision == 12
    assert config.workers == 1
    assert config.tau_mag == 1e-3
    assert config.verbosity == 0


def test_worker_env_var_sets_default(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV_VAR, "7")
    assert assemble_config("qfi", {}, {}).workers == 7
    assert assemble_config("qfi", {}, {"workers": 3}).workers == 3
    assert assemble_config("qfi", {"workers": 5}, {"workers": 3}).workers == 5

    monkeypatch.setenv(WORKERS_ENV_VAR, "zero")
    with pytest.raises(ConfigError):
        assemble_config("qfi", {}, {})
    monkeypatch.setenv(WORKERS_ENV_VAR, "0")
    with pytest.raises(ConfigError):
        assemble_config("qfi", {}, {})


def test_assemble_rejects_inconsistent_values():
    for bad in (
        {"format": "yaml"},
        {"precision": 0},
        {"workers": -2},
        {"tau_mag": -1.0},
        {"boundary": "twisted"},
        {"temperature": []},
        {"temperature": [-0.5]},
    ):
        with pytest.raises(ConfigError):
            assemble_config("qfi", {}, bad)
