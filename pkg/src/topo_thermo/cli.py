"""Command-line front end.

Subcommands: spectrum, polarization, qfi, sweep, figure. Options resolve
with the precedence command-line flag > config-file value > documented
default. The config file (--config) is a flat JSON object whose keys
mirror the RunConfig field names. Exit codes: 0 success, 2 configuration
error, 3 numerical failure or unwritable output.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import io as io_mod
from .figures import FIGURE_IDS, build_figure_spec
from .lattice import BOUNDARIES, PERIODIC, ModelParams, build_hamiltonian
from .polarization import DEFAULT_MAGNITUDE_CUTOFF, MODE_DETERMINANT
from .sweep import (
    QUANTITIES,
    QUANTITY_DIAGNOSTICS,
    QUANTITY_INTERFEROMETRIC_POWER,
    QUANTITY_POLARIZATION,
    QUANTITY_QFI_MATRIX,
    SweepSpec,
    run_sweep,
)
from .thermal import diagonalize

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

WORKERS_ENV_VAR = "TOPO_THERMO_WORKERS"

log = logging.getLogger("topo_thermo")


class ConfigError(ValueError):
    """Bad flags, config file, or inconsistent run configuration."""


@dataclass
class RunConfig:
    subcommand: str
    n_cells: int | None = None
    v: float | None = None
    w: float | None = None
    z: float | None = None
    boundary: str = PERIODIC
    temperature: list | None = None
    modes: list | None = None
    axes: list | None = None
    quantities: list | None = None
    label: str = ""
    out: str = "-"
    format: str = io_mod.FORMAT_CSV
    precision: int = io_mod.DEFAULT_PRECISION
    workers: int = 1
    tau_mag: float = DEFAULT_MAGNITUDE_CUTOFF
    verbosity: int = 0
    eigenvectors: bool = False


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV_VAR)
    if raw is None:
        return 1
    try:
        workers = int(raw)
    except ValueError:
        raise ConfigError(f"{WORKERS_ENV_VAR} must be an integer >= 1, got {raw!r}")
    if workers < 1:
        raise ConfigError(f"{WORKERS_ENV_VAR} must be an integer >= 1, got {raw!r}")
    return workers


def _coerce_temperature(value) -> list:
    values = value if isinstance(value, (list, tuple)) else [value]
    try:
        temps = [float(t) for t in values]
    except (TypeError, ValueError):
        raise ConfigError(f"temperature must be a number or list of numbers, got {value!r}")
    if not temps:
        raise ConfigError("temperature list is empty")
    if any(t < 0.0 for t in temps):
        raise ConfigError("temperatures must be >= 0")
    return sorted(set(temps))


def _coerce_list(value, name: str) -> list:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    if isinstance(value, (list, tuple)):
        return list(value)
    raise ConfigError(f"{name} must be a list or comma-separated string, got {value!r}")


def _parse_axis_flag(text: str) -> tuple:
    """'T=0.01:1.0:101' (linspace) or 'z=0,0.5,1' (explicit grid)."""
    if "=" not in text:
        raise ConfigError(f"axis must look like NAME=START:STOP:COUNT, got {text!r}")
    name, _, rhs = text.partition("=")
    name = name.strip()
    try:
        if ":" in rhs:
            start, stop, count = rhs.split(":")
            grid = np.linspace(float(start), float(stop), int(count))
        else:
            grid = np.array([float(item) for item in rhs.split(",")])
    except ValueError:
        raise ConfigError(f"could not parse axis grid {rhs!r}")
    values = [int(x) if name == "N" else float(x) for x in grid]
    return name, tuple(values)


def _coerce_axes(value) -> list:
    if isinstance(value, dict):
        pairs = list(value.items())
    elif isinstance(value, (list, tuple)):
        pairs = []
        for item in value:
            if isinstance(item, str):
                pairs.append(_parse_axis_flag(item))
            elif isinstance(item, (list, tuple)) and len(item) == 2:
                pairs.append((item[0], item[1]))
            else:
                raise ConfigError(f"bad axis entry {item!r}")
    else:
        raise ConfigError(f"axes must be an object or list, got {value!r}")
    axes = []
    for name, grid in pairs:
        if not isinstance(grid, (list, tuple)):
            raise ConfigError(f"axis {name!r} grid must be a list, got {grid!r}")
        values = [int(x) if name == "N" else float(x) for x in grid]
        axes.append((str(name), tuple(values)))
    return axes


_COERCERS = {
    "n_cells": lambda v: int(v),
    "v": lambda v: float(v),
    "w": lambda v: float(v),
    "z": lambda v: float(v),
    "boundary": lambda v: str(v),
    "temperature": _coerce_temperature,
    "modes": lambda v: _coerce_list(v, "modes"),
    "axes": _coerce_axes,
    "quantities": lambda v: _coerce_list(v, "quantities"),
    "label": lambda v: str(v),
    "out": lambda v: str(v),
    "format": lambda v: str(v),
    "precision": lambda v: int(v),
    "workers": lambda v: int(v),
    "tau_mag": lambda v: float(v),
    "verbosity": lambda v: int(v),
    "eigenvectors": lambda v: bool(v),
}


def load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return data


def assemble_config(subcommand: str, flag_values: dict, config_values: dict) -> RunConfig:
    """Resolve defaults, then config-file values, then explicit flags."""
    known = {f.name for f in fields(RunConfig)} - {"subcommand"}
    for key in config_values:
        if key == "subcommand":
            continue
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
    config = RunConfig(subcommand=subcommand, workers=_default_workers())
    for source in (config_values, flag_values):
        for key, value in source.items():
            if key == "subcommand" or value is None:
                continue
            try:
                setattr(config, key, _COERCERS[key](value))
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad value for {key}: {exc}")
    if config.boundary not in BOUNDARIES:
        raise ConfigError(f"boundary must be one of {BOUNDARIES}, got {config.boundary!r}")
    if config.format not in io_mod.FORMATS:
        raise ConfigError(f"format must be one of {io_mod.FORMATS}, got {config.format!r}")
    if config.precision < 1:
        raise ConfigError(f"precision must be >= 1, got {config.precision}")
    if config.workers < 1:
        raise ConfigError(f"workers must be >= 1, got {config.workers}")
    if config.tau_mag < 0.0:
        raise ConfigError(f"tau_mag must be >= 0, got {config.tau_mag}")
    return config


def _require_model(config: RunConfig) -> dict:
    missing = [name for name in ("n_cells", "v", "w", "z") if getattr(config, name) is None]
    if missing:
        raise ConfigError(f"missing required model parameters: {', '.join(missing)}")
    return {
        "N": config.n_cells,
        "v": config.v,
        "w": config.w,
        "z": config.z,
    }


def _require_temperature(config: RunConfig) -> list:
    if not config.temperature:
        raise ConfigError("missing required --temperature")
    return config.temperature


def _point_sweep_spec(config: RunConfig, quantities: tuple, modes: tuple) -> SweepSpec:
    fixed = _require_model(config)
    temps = tuple(_require_temperature(config))
    return SweepSpec(
        axes=(("T", temps),),
        fixed=fixed,
        boundary=config.boundary,
        quantities=quantities,
        polarization_modes=modes,
        magnitude_cutoff=config.tau_mag,
        label=config.label,
    )


def _emit(config: RunConfig, records) -> None:
    io_mod.emit_records(records, config.format, config.precision, config.out)


def _run_spectrum(config: RunConfig) -> int:
    if config.modes:
        raise ConfigError("polarization modes are only meaningful for polarization output")
    model = _require_model(config)
    params = ModelParams(
        n_cells=model["N"], v=model["v"], w=model["w"], z=model["z"], boundary=config.boundary
    )
    spectrum = diagonalize(build_hamiltonian(params))
    columns = ["n", "energy"]
    if config.eigenvectors:
        columns += [f"c{i}" for i in range(spectrum.dimension)]
    rows = []
    for n in range(spectrum.dimension):
        row = {"n": n, "energy": float(spectrum.energies[n])}
        if config.eigenvectors:
            for i in range(spectrum.dimension):
                row[f"c{i}"] = float(spectrum.vectors[i, n])
        rows.append(row)
    io_mod.emit_rows(rows, columns, config.format, config.precision, config.out)
    return EXIT_OK


def _run_polarization(config: RunConfig) -> int:
    modes = config.modes
    if not modes:
        modes = [MODE_DETERMINANT]
        print(
            "note: polarization mode defaulted to 'determinant'; "
            "the ensemble-trace reading is available via --mode literal",
            file=sys.stderr,
        )
    spec = _point_sweep_spec(
        config, (QUANTITY_POLARIZATION, QUANTITY_DIAGNOSTICS), tuple(modes)
    )
    _emit(config, run_sweep(spec, config.workers))
    return EXIT_OK


def _run_qfi(config: RunConfig) -> int:
    if config.modes:
        raise ConfigError("polarization modes are only meaningful for polarization output")
    spec = _point_sweep_spec(
        config,
        (QUANTITY_QFI_MATRIX, QUANTITY_INTERFEROMETRIC_POWER, QUANTITY_DIAGNOSTICS),
        (),
    )
    _emit(config, run_sweep(spec, config.workers))
    return EXIT_OK


def _run_sweep_command(config: RunConfig) -> int:
    if not config.axes:
        raise ConfigError("sweep needs at least one axis (config 'axes' or --axis)")
    if not config.quantities:
        raise ConfigError("sweep needs 'quantities' (config key or --quantities)")
    for quantity in config.quantities:
        if quantity not in QUANTITIES:
            raise ConfigError(f"unknown quantity {quantity!r}, expected one of {QUANTITIES}")
    axis_names = [name for name, _ in config.axes]
    fixed = {}
    for name, attr in (("T", "temperature"), ("v", "v"), ("w", "w"), ("z", "z"), ("N", "n_cells")):
        if name in axis_names:
            continue
        value = getattr(config, attr)
        if value is None:
            raise ConfigError(f"parameter {name!r} is neither an axis nor fixed")
        if name == "T":
            if len(value) != 1:
                raise ConfigError("a fixed temperature must be a single value")
            value = value[0]
        fixed[name] = value
    modes = tuple(config.modes) if config.modes else ()
    if QUANTITY_POLARIZATION in config.quantities and not modes:
        modes = (MODE_DETERMINANT,)
        print("note: polarization mode defaulted to 'determinant'", file=sys.stderr)
    spec = SweepSpec(
        axes=config.axes,
        fixed=fixed,
        boundary=config.boundary,
        quantities=tuple(config.quantities),
        polarization_modes=modes,
        magnitude_cutoff=config.tau_mag,
        label=config.label,
    )
    log.info("sweep over %d points with %d workers", len(spec.axes), config.workers)
    _emit(config, run_sweep(spec, config.workers))
    return EXIT_OK


def _run_figure(config: RunConfig, figure_id: str) -> int:
    spec = build_figure_spec(figure_id, magnitude_cutoff=config.tau_mag)
    if figure_id.startswith("1"):
        print(
            f"note: figure {figure_id} uses determinant-mode polarization; "
            "the ensemble-trace reading is available via the polarization subcommand",
            file=sys.stderr,
        )
    _emit(config, run_sweep(spec, config.workers))
    return EXIT_OK


def _add_common_flags(parser: argparse.ArgumentParser, model: bool = True) -> None:
    parser.add_argument("--config", help="flat JSON config file")
    if model:
        parser.add_argument("--n-cells", dest="n_cells", type=int)
        parser.add_argument("--v", type=float, help="intra-cell hopping")
        parser.add_argument("--w", type=float, help="inter-cell hopping")
        parser.add_argument("--z", type=float, help="second-neighbor hopping")
        parser.add_argument("--boundary", choices=BOUNDARIES)
    parser.add_argument("--out", "-o", help="output path, '-' for stdout")
    parser.add_argument("--format", choices=io_mod.FORMATS)
    parser.add_argument("--precision", type=int, help="significant digits (default 12)")
    parser.add_argument("--workers", type=int, help=f"worker count (default ${WORKERS_ENV_VAR} or 1)")
    parser.add_argument("--tau-mag", dest="tau_mag", type=float, help="magnitude cutoff")
    parser.add_argument("--label", help="free-text run identifier")
    parser.add_argument("--verbose", dest="verbosity", action="count", help="more logging")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topo-thermo",
        description="Thermal extended SSH chain: polarization and quantum Fisher information.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_spectrum = sub.add_parser("spectrum", help="energies (and optionally eigenvectors)")
    _add_common_flags(p_spectrum)
    p_spectrum.add_argument("--eigenvectors", action="store_true", default=None)

    p_pol = sub.add_parser("polarization", help="polarization at a single parameter point")
    _add_common_flags(p_pol)
    p_pol.add_argument("--temperature", "-T", action="append", type=float)
    p_pol.add_argument("--mode", dest="modes", action="append", help="repeatable")

    p_qfi = sub.add_parser("qfi", help="QFI matrix and interferometric power at a point")
    _add_common_flags(p_qfi)
    p_qfi.add_argument("--temperature", "-T", action="append", type=float)

    p_sweep = sub.add_parser("sweep", help="grid sweep from a config file plus overrides")
    _add_common_flags(p_sweep)
    p_sweep.add_argument("--temperature", "-T", action="append", type=float)
    p_sweep.add_argument("--axis", dest="axes", action="append", help="NAME=START:STOP:COUNT")
    p_sweep.add_argument("--quantities", help="comma list from: " + ", ".join(QUANTITIES))
    p_sweep.add_argument("--mode", dest="modes", action="append")

    p_fig = sub.add_parser("figure", help="emit a bundled phase-diagram preset")
    p_fig.add_argument("figure_id", choices=FIGURE_IDS)
    _add_common_flags(p_fig, model=False)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK

    flag_values = {
        key: value
        for key, value in vars(args).items()
        if key not in ("subcommand", "config", "figure_id")
    }
    try:
        config_values = load_config_file(args.config) if getattr(args, "config", None) else {}
        config = assemble_config(args.subcommand, flag_values, config_values)
        logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s")
        log.setLevel(
            logging.WARNING if config.verbosity == 0
            else logging.INFO if config.verbosity == 1
            else logging.DEBUG
        )
        if args.subcommand == "spectrum":
            return _run_spectrum(config)
        if args.subcommand == "polarization":
            return _run_polarization(config)
        if args.subcommand == "qfi":
            return _run_qfi(config)
        if args.subcommand == "sweep":
            return _run_sweep_command(config)
        if args.subcommand == "figure":
            return _run_figure(config, args.figure_id)
        raise ConfigError(f"unknown subcommand {args.subcommand!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (np.linalg.LinAlgError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"output failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
