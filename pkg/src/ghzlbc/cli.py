"""Command-line interface: sweep experiments, bundled presets, verification.

Subcommands
-----------
evolve   Run the sweep described by a JSON config and write a CSV.
preset   Write the CSV file set of a named, self-contained experiment.
verify   Run all routes over a config's grid and write a JSON report.

Exit codes: 0 success, 1 configuration error, 2 tolerance violation
(verify only), 3 internal numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import __version__
from .channels import ChannelSpec, NoiseConfig, evolve, p_of_t
from .errors import (
    ConfigParseError,
    GhzLbcError,
    NumericalFailure,
    UnknownPreset,
)
from .factorization import death_probability, verify_point
from .lbc import SPECTRAL_CAP_DEFAULT, bipartitions, lbc_closed_form
from .state import GhzSpec, ghz_density, xstate_view

DEFAULT_TOL = 1e-8
METHODS = ("direct", "spectral", "factorized")
PRESETS = ("fig1", "fig2a", "fig2b", "fig2c", "esd")


@dataclass(frozen=True)
class ExperimentConfig:
    """Parsed and validated experiment description."""

    spec: GhzSpec
    noise: NoiseConfig
    grid_parameter: str  # "p" or "t"
    grid_points: tuple[float, ...]
    methods: tuple[str, ...]
    route_tol: float | None
    raw: dict

    def point_probabilities(self, value: float) -> tuple[float, ...]:
        """Per-channel probabilities at one grid value.

        For a "p" sweep each channel's fixed ``p`` is its probability at
        grid value 1 and scales linearly: p_j(v) = v * p_j.  For a "t"
        sweep each channel needs ``gamma`` and p_j(v) = 1 - exp(-gamma_j v).
        """
        if self.grid_parameter == "p":
            return tuple(value * s.p for _, s in self.noise.assignments)
        return tuple(p_of_t(s.gamma, value) for _, s in self.noise.assignments)


def _require_fields(mapping: dict, where: str, required: Sequence[str],
                    optional: Sequence[str] = ()) -> None:
    if not isinstance(mapping, dict):
        raise ConfigParseError(f"{where}: expected an object, got {type(mapping).__name__}")
    unknown = set(mapping) - set(required) - set(optional)
    if unknown:
        raise ConfigParseError(f"{where}: unknown fields {sorted(unknown)}")
    missing = [f for f in required if f not in mapping]
    if missing:
        raise ConfigParseError(f"{where}: missing fields {missing}")


def _real(mapping: dict, where: str, field: str) -> float:
    value = mapping[field]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigParseError(f"{where}.{field}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigParseError(f"{where}.{field}: must be finite, got {value!r}")
    return float(value)


def parse_config(data: dict) -> ExperimentConfig:
    """Validate a config dictionary; unknown fields are rejected."""
    _require_fields(data, "config", ["n_qubits", "state", "channels", "grid"],
                    ["methods", "tolerances"])
    n = data["n_qubits"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ConfigParseError(f"n_qubits: expected an integer, got {n!r}")

    st = data["state"]
    _require_fields(st, "state",
                    ["alpha_re", "alpha_im", "beta_re", "beta_im", "pattern"])
    if not isinstance(st["pattern"], str):
        raise ConfigParseError(f"state.pattern: expected a string, got {st['pattern']!r}")
    alpha = complex(_real(st, "state", "alpha_re"), _real(st, "state", "alpha_im"))
    beta = complex(_real(st, "state", "beta_re"), _real(st, "state", "beta_im"))

    grid = data["grid"]
    _require_fields(grid, "grid", ["parameter", "points"])
    parameter = grid["parameter"]
    if parameter not in ("p", "t"):
        raise ConfigParseError(f"grid.parameter: expected 'p' or 't', got {parameter!r}")
    pts = grid["points"]
    if not isinstance(pts, list) or not pts:
        raise ConfigParseError("grid.points: expected a nonempty list")
    points = tuple(_real({"v": x}, "grid.points", "v") for x in pts)
    if any(b <= a for a, b in zip(points, points[1:])):
        raise ConfigParseError("grid.points: must be strictly ascending")
    if parameter == "p" and (points[0] < 0.0 or points[-1] > 1.0):
        raise ConfigParseError("grid.points: must lie in [0, 1] for a 'p' sweep")
    if parameter == "t" and points[0] < 0.0:
        raise ConfigParseError("grid.points: must be nonnegative for a 't' sweep")

    raw_channels = data["channels"]
    if not isinstance(raw_channels, list) or not raw_channels:
        raise ConfigParseError("channels: expected a nonempty list")
    assignments = []
    for i, ch in enumerate(raw_channels):
        where = f"channels[{i}]"
        _require_fields(ch, where, ["qubit", "kind"], ["p", "gamma"])
        q = ch["qubit"]
        if isinstance(q, bool) or not isinstance(q, int):
            raise ConfigParseError(f"{where}.qubit: expected an integer, got {q!r}")
        if ("p" in ch) == ("gamma" in ch):
            raise ConfigParseError(f"{where}: exactly one of 'p' or 'gamma' required")
        if parameter == "p" and "p" not in ch:
            raise ConfigParseError(f"{where}: a 'p' sweep requires the 'p' field")
        if parameter == "t" and "gamma" not in ch:
            raise ConfigParseError(f"{where}: a 't' sweep requires the 'gamma' field")
        kwargs = {}
        if "p" in ch:
            kwargs["p"] = _real(ch, where, "p")
        if "gamma" in ch:
            kwargs["gamma"] = _real(ch, where, "gamma")
        try:
            assignments.append((q, ChannelSpec(ch["kind"], **kwargs)))
        except (GhzLbcError, ValueError) as exc:
            raise ConfigParseError(f"{where}: {exc}") from exc

    methods = tuple(data.get("methods", ["direct"]))
    if not methods or len(set(methods)) != len(methods):
        raise ConfigParseError("methods: expected a nonempty list without duplicates")
    unknown = set(methods) - set(METHODS)
    if unknown:
        raise ConfigParseError(f"methods: unknown entries {sorted(unknown)}")
    if "direct" not in methods:
        raise ConfigParseError("methods: 'direct' is required")

    route_tol = None
    if "tolerances" in data:
        tl = data["tolerances"]
        _require_fields(tl, "tolerances", [], ["route_agreement"])
        if "route_agreement" in tl:
            route_tol = _real(tl, "tolerances", "route_agreement")
            if route_tol <= 0.0:
                raise ConfigParseError("tolerances.route_agreement: must be positive")

    try:
        spec = GhzSpec(n, alpha, beta, st["pattern"])
        noise = NoiseConfig(n, tuple(assignments))
    except (GhzLbcError, ValueError) as exc:
        raise ConfigParseError(str(exc)) from exc

    if "spectral" in methods and n > SPECTRAL_CAP_DEFAULT:
        raise ConfigParseError(
            f"methods: spectral route capped at {SPECTRAL_CAP_DEFAULT} qubits, config has {n}"
        )

    return ExperimentConfig(spec, noise, parameter, points, methods, route_tol, data)


def load_config(path: str | Path) -> ExperimentConfig:
    """Read and validate a JSON experiment config."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"{path}: {exc}") from exc
    return parse_config(data)


@dataclass(frozen=True)
class SweepRow:
    """One grid point of an evolve sweep."""

    grid_value: float
    lbc_direct: float
    lbc_spectral: float | None
    lbc_factorized: float | None
    condition: str
    max_deviation: float
    per_bipartition: tuple[float, ...] | None = None


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(row) + "\n")


def run_evolve(
    config: ExperimentConfig,
    out_path: str | Path,
    *,
    per_bipartition: bool = False,
) -> list[SweepRow]:
    """Run the sweep and write its CSV; returns the computed rows."""
    spec, noise = config.spec, config.noise
    want_spectral = "spectral" in config.methods
    want_factorized = "factorized" in config.methods

    rows = []
    for value in config.grid_points:
        probs = config.point_probabilities(value)
        point = verify_point(
            spec, noise, probs,
            grid_value=value,
            use_spectral=want_spectral,
            use_factorized=want_factorized,
        )
        per = None
        if per_bipartition:
            report = lbc_closed_form(
                xstate_view(evolve(ghz_density(spec), noise, probs), spec)
            )
            per = tuple(report.per_bipartition[b] for b in bipartitions(spec.n_qubits))
        rows.append(SweepRow(
            grid_value=value,
            lbc_direct=point.lbc_direct,
            lbc_spectral=point.lbc_spectral,
            lbc_factorized=point.lbc_factorized,
            condition=point.condition,
            max_deviation=point.max_deviation,
            per_bipartition=per,
        ))

    header = ["p", "lbc_direct"]
    if want_spectral:
        header.append("lbc_spectral")
    if want_factorized:
        header.append("lbc_factorized")
    header += ["condition", "max_deviation"]
    if per_bipartition:
        header += [f"cp_{b.label}" for b in bipartitions(spec.n_qubits)]

    out = []
    for row in rows:
        cells = [_fmt(row.grid_value), _fmt(row.lbc_direct)]
        if want_spectral:
            cells.append("" if row.lbc_spectral is None else _fmt(row.lbc_spectral))
        if want_factorized:
            cells.append("" if row.lbc_factorized is None else _fmt(row.lbc_factorized))
        cells += [row.condition, _fmt(row.max_deviation)]
        if per_bipartition:
            cells += [_fmt(c) for c in row.per_bipartition]
        out.append(cells)
    _write_csv(Path(out_path), header, out)
    return rows


def _grid_dict(points: Sequence[float]) -> dict:
    return {"parameter": "p", "points": list(points)}


def _preset_config(n: int, alpha: float, beta: float, kind: str, m: int,
                   points: Sequence[float], methods: Sequence[str]) -> ExperimentConfig:
    return parse_config({
        "n_qubits": n,
        "state": {
            "alpha_re": alpha, "alpha_im": 0.0,
            "beta_re": beta, "beta_im": 0.0,
            "pattern": "0" * n,
        },
        "channels": [{"qubit": q, "kind": kind, "p": 1.0} for q in range(1, m + 1)],
        "grid": _grid_dict(points),
        "methods": list(methods),
    })


def run_preset(name: str, grid_size: int = 101, outdir: str | Path = ".") -> list[Path]:
    """Write the CSV file set of a named preset; returns the paths."""
    if name not in PRESETS:
        raise UnknownPreset(f"unknown preset {name!r}, expected one of {PRESETS}")
    if not isinstance(grid_size, int) or grid_size < 2:
        raise ConfigParseError(f"grid size must be an integer >= 2, got {grid_size!r}")
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    points = [i / (grid_size - 1) for i in range(grid_size)]
    inv = 1.0 / math.sqrt(2.0)
    paths = []

    if name == "fig1":
        for m in range(1, 6):
            cfg = _preset_config(m + 1, inv, inv, "AD", m, points,
                                 ["direct", "factorized"])
            path = outdir / f"fig1_M{m}.csv"
            run_evolve(cfg, path)
            paths.append(path)
    elif name == "fig2a":
        for m in (1, 2, 3):
            cfg = _preset_config(4, inv, inv, "D", m, points, ["direct", "factorized"])
            path = outdir / f"fig2a_M{m}.csv"
            run_evolve(cfg, path)
            paths.append(path)
    elif name == "fig2b":
        for n in (2, 3, 4):
            cfg = _preset_config(n, inv, inv, "D", 1, points, ["direct", "factorized"])
            path = outdir / f"fig2b_N{n}.csv"
            run_evolve(cfg, path)
            paths.append(path)
    elif name == "fig2c":
        for n in (3, 4):
            cfg = _preset_config(n, inv, inv, "D", 2, points, ["direct", "factorized"])
            path = outdir / f"fig2c_N{n}.csv"
            run_evolve(cfg, path)
            paths.append(path)
    else:  # esd
        thresholds = []
        for beta_sq, tag in ((0.5, "b050"), (0.8, "b080")):
            alpha = math.sqrt(1.0 - beta_sq)
            beta = math.sqrt(beta_sq)
            cfg = _preset_config(3, alpha, beta, "AD", 3, points, ["direct"])
            path = outdir / f"esd_{tag}.csv"
            run_evolve(cfg, path)
            paths.append(path)
            thresholds.append((beta_sq, death_probability(cfg.spec, cfg.noise)))
        path = outdir / "esd_thresholds.csv"
        _write_csv(path, ["beta_sq", "p_star"],
                   [[_fmt(b), _fmt(p)] for b, p in thresholds])
        paths.append(path)
    return paths


def run_verify(
    config: ExperimentConfig,
    out_path: str | Path,
    tol: float | None = None,
) -> tuple[dict, bool]:
    """Run every requested route over the grid and write a JSON report.

    Returns the report dictionary and whether the worst route deviation
    stayed within tolerance.
    """
    if tol is None:
        tol = config.route_tol if config.route_tol is not None else DEFAULT_TOL
    spec, noise = config.spec, config.noise
    want_spectral = "spectral" in config.methods and spec.n_qubits <= SPECTRAL_CAP_DEFAULT
    want_factorized = "factorized" in config.methods

    points = []
    histogram: dict[str, int] = {}
    worst = 0.0
    for value in config.grid_points:
        probs = config.point_probabilities(value)
        try:
            pt = verify_point(
                spec, noise, probs,
                grid_value=value,
                use_spectral=want_spectral,
                use_factorized=want_factorized,
            )
            entry = {
                "p": pt.grid_value,
                "probabilities": list(pt.probabilities),
                "lbc_direct": pt.lbc_direct,
                "lbc_spectral": pt.lbc_spectral,
                "lbc_factorized": pt.lbc_factorized,
                "condition": pt.condition,
                "max_deviation": pt.max_deviation,
                "error": None,
            }
            histogram[pt.condition] = histogram.get(pt.condition, 0) + 1
            worst = max(worst, pt.max_deviation)
        except NumericalFailure:
            raise
        except (GhzLbcError, ValueError) as exc:
            entry = {
                "p": value,
                "probabilities": list(probs),
                "lbc_direct": None,
                "lbc_spectral": None,
                "lbc_factorized": None,
                "condition": "error",
                "max_deviation": None,
                "error": f"{type(exc).__name__}: {exc}",
            }
            histogram["error"] = histogram.get("error", 0) + 1
        points.append(entry)

    passed = worst <= tol
    report = {
        "version": __version__,
        "config": config.raw,
        "tolerance": tol,
        "points": points,
        "summary": {
            "max_deviation": worst,
            "condition_histogram": histogram,
            "passed": passed,
        },
    }
    with open(out_path, "w", encoding="utf-8", newline="") as f:
        json.dump(report, f, indent=2)
        f.write("\n")
    return report, passed


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghzlbc",
        description="Concurrence lower-bound sweeps for GHZ states under local noise",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_evolve = sub.add_parser("evolve", help="run a config sweep and write a CSV")
    p_evolve.add_argument("--config", required=True, help="JSON experiment config")
    p_evolve.add_argument("--out", required=True, help="output CSV path")
    p_evolve.add_argument("--per-bipartition", action="store_true",
                          help="append per-cut concurrence columns")

    p_preset = sub.add_parser("preset", help="write a named preset's file set")
    p_preset.add_argument("--name", required=True,
                          help=f"one of {', '.join(PRESETS)}")
    p_preset.add_argument("--grid", type=int, default=101,
                          help="number of uniform grid points (default 101)")
    p_preset.add_argument("--outdir", required=True, help="output directory")

    p_verify = sub.add_parser("verify", help="compare routes and write a JSON report")
    p_verify.add_argument("--config", required=True, help="JSON experiment config")
    p_verify.add_argument("--out", required=True, help="output JSON path")
    p_verify.add_argument("--tol", type=float, default=None,
                          help=f"route agreement tolerance (default {DEFAULT_TOL})")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1

    try:
        if args.command == "evolve":
            cfg = load_config(args.config)
            rows = run_evolve(cfg, args.out, per_bipartition=args.per_bipartition)
            print(f"wrote {args.out} ({len(rows)} rows)")
        elif args.command == "preset":
            paths = run_preset(args.name, args.grid, args.outdir)
            for path in paths:
                print(f"wrote {path}")
        else:  # verify
            cfg = load_config(args.config)
            report, passed = run_verify(cfg, args.out, tol=args.tol)
            summary = report["summary"]
            status = "OK" if passed else "TOLERANCE VIOLATION"
            print(f"wrote {args.out}: max deviation {summary['max_deviation']:.3e} "
                  f"(tolerance {report['tolerance']:.3e}) {status}")
            if not passed:
                return 2
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (GhzLbcError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
