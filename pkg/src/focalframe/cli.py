"""Command-line front end.

Five subcommands over curve spec files (see :mod:`focalframe.specfile`):

* ``analyze``     curvature/speed table as CSV plus a JSON classification
* ``focal``       focal curve and focal data as CSV plus the frame-relation report
* ``slant``       slant verdicts for one or all k, as JSON
* ``verify``      focal slant-helix verification, pass/fail JSON report
* ``synthesize``  integrate a curvatures spec into a samples spec

``--output`` is a path prefix: commands write ``PREFIX.csv`` and/or
``PREFIX.json``. Outputs are deterministic: a fixed seed, fixed summation
orders and 17-significant-digit CSV floats make identical inputs produce
byte-identical files.

Exit codes: 0 success, 1 verification failed, 2 input error, 3 numeric
failure (degeneracy or vertices covering the whole grid).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .curves import Curve, reparam_to_arclength
from .errors import (
    BadParameters,
    FocalFrameError,
    InvalidProfile,
    OrderUnsupported,
    OutOfDomain,
    SpecFileError,
)
from .focal import focal_curvatures, focal_relations_check
from .frenet import classify, curvature_table
from .slant import is_k_slant, verify_focal_slant
from .specfile import build_curve, load_curve_spec, samples_spec_dict, save_spec

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_NUMERIC_FAILURE = 3

_INPUT_ERRORS = (SpecFileError, BadParameters, InvalidProfile, OutOfDomain, OrderUnsupported)


@dataclass
class RunConfig:
    command: str
    input_path: str
    output_path: str
    grid_points: int = 256
    tolerance: float | None = None
    k: int | None = None
    dim: int | None = None
    seed: int = 42
    step: float | None = None

    def __post_init__(self):
        if self.grid_points < 16:
            raise SpecFileError(f"grid_points must be at least 16, got {self.grid_points}")
        if self.tolerance is not None and self.tolerance <= 0:
            raise SpecFileError("tolerance must be positive")


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _write_csv(path: Path, header: list[str], rows: list[list[float]]) -> None:
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, payload: dict) -> None:
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _load(config: RunConfig) -> Curve:
    spec = load_curve_spec(config.input_path)
    if config.dim is not None and config.dim != spec.dim:
        raise SpecFileError(f"--dim {config.dim} contradicts spec dim {spec.dim}")
    return build_curve(spec, step=config.step)


def _unit_speed(curve: Curve) -> Curve:
    probes = curve.grid(17)
    worst = max(abs(float(np.linalg.norm(curve.evaluator(float(t), 1)[1])) - 1.0) for t in probes)
    return curve if worst <= 1e-8 else reparam_to_arclength(curve)


def _meta(config: RunConfig) -> dict:
    return {
        "command": config.command,
        "input": config.input_path,
        "grid_points": config.grid_points,
        "seed": config.seed,
        "version": __version__,
    }


def _cmd_analyze(config: RunConfig, out: Path) -> int:
    curve = _load(config)
    grid = curve.grid(config.grid_points)
    table = curvature_table(curve, grid)
    dim, d = curve.dimension, curve.dimension
    header = (["s"] + [f"x{i}" for i in range(dim)]
              + [f"kappa_{i}" for i in range(1, d)] + ["speed"])
    rows = []
    for i, s in enumerate(table.s):
        point = curve.evaluator(float(s), 0)[0]
        rows.append([s, *point, *table.curvatures[i], table.speed[i]])
    _write_csv(out.with_suffix(".csv"), header, rows)

    n_ok = int(table.ok.sum())
    payload = _meta(config) | {"rows_ok": n_ok, "rows_total": int(table.s.size)}
    if n_ok >= 8:
        try:
            cl = classify(curve, grid[table.ok],
                          tol=config.tolerance if config.tolerance else 1e-6)
            payload["classification"] = {
                "is_w_curve": cl.is_w_curve,
                "is_ccr": cl.is_ccr,
                "ratios": [float(r) for r in cl.ratios],
                "curvature_spreads": [float(x) for x in cl.spreads],
            }
        except FocalFrameError as exc:
            payload["classification"] = {"error": str(exc)}
    _write_json(out.with_suffix(".json"), payload)
    return EXIT_OK if n_ok else EXIT_NUMERIC_FAILURE


def _cmd_focal(config: RunConfig, out: Path) -> int:
    curve = _unit_speed(_load(config))
    grid = curve.grid(config.grid_points)
    table = focal_curvatures(curve, grid)
    m = curve.dimension - 1
    header = (["s"] + [f"C{i}" for i in range(curve.dimension)]
              + [f"c_{i}" for i in range(1, m + 1)]
              + ["A", "epsilon", "R_m", "is_vertex"])
    rows = [[fd.s, *fd.focal_point, *fd.focal_curvatures,
             fd.A, fd.epsilon, fd.R_m, int(fd.is_vertex)] for fd in table]
    _write_csv(out.with_suffix(".csv"), header, rows)

    payload = _meta(config) | {"n_vertices": sum(fd.is_vertex for fd in table)}
    try:
        payload["relations"] = focal_relations_check(curve, grid).to_dict()
        status = EXIT_OK
    except FocalFrameError as exc:
        payload["relations"] = None
        payload["error"] = str(exc)
        status = EXIT_NUMERIC_FAILURE
    _write_json(out.with_suffix(".json"), payload)
    return status


def _cmd_slant(config: RunConfig, out: Path) -> int:
    curve = _load(config)
    grid = curve.grid(config.grid_points)
    ks = [config.k] if config.k is not None else list(range(1, curve.dimension + 1))
    reports = [is_k_slant(curve, k, grid, config.tolerance) for k in ks]
    payload = _meta(config) | {"reports": [r.to_dict() for r in reports]}
    _write_json(out.with_suffix(".json"), payload)
    return EXIT_OK


def _cmd_verify(config: RunConfig, out: Path) -> int:
    curve = _load(config)
    grid = curve.grid(config.grid_points)
    m = curve.dimension - 1
    if config.k is not None:
        ks = [config.k]
    else:
        ks = [k for k in range(1, m + 2)
              if is_k_slant(curve, k, grid, config.tolerance).is_slant]
    reports = []
    for k in ks:
        reports.append(verify_focal_slant(curve, k, grid, tol=config.tolerance,
                                          focal_tol=config.tolerance))
    all_passed = bool(reports) and all(r.passed for r in reports)
    payload = _meta(config) | {
        "verified_k": ks,
        "all_passed": all_passed,
        "reports": [r.to_dict() for r in reports],
    }
    if not ks:
        payload["note"] = "no slant index detected on the base curve; nothing to verify"
    _write_json(out.with_suffix(".json"), payload)
    return EXIT_OK if all_passed else EXIT_VERIFY_FAILED


def _cmd_synthesize(config: RunConfig, out: Path) -> int:
    spec = load_curve_spec(config.input_path)
    if spec.type != "curvatures":
        raise SpecFileError(f"synthesize needs a curvatures spec, got type {spec.type!r}")
    if config.dim is not None and config.dim != spec.dim:
        raise SpecFileError(f"--dim {config.dim} contradicts spec dim {spec.dim}")
    curve = build_curve(spec, step=config.step)
    save_spec(samples_spec_dict(curve, config.grid_points), out.with_suffix(".json"))
    return EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "focal": _cmd_focal,
    "slant": _cmd_slant,
    "verify": _cmd_verify,
    "synthesize": _cmd_synthesize,
}


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    out = Path(config.output_path)
    if out.parent and not out.parent.exists():
        out.parent.mkdir(parents=True, exist_ok=True)
    try:
        return _COMMANDS[config.command](config, out)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except FocalFrameError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="focalframe",
        description="Frenet frames, focal curves and slant-helix verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in [
        ("analyze", "curvature table (CSV) and classification (JSON)"),
        ("focal", "focal curve, focal curvatures and frame relations"),
        ("slant", "slant verdicts for one or all frame indices"),
        ("verify", "verify the focal slant-index migration"),
        ("synthesize", "integrate a curvatures spec into a samples spec"),
    ]:
        p = sub.add_parser(name, help=doc)
        p.add_argument("--input", required=True, help="curve spec file (JSON)")
        p.add_argument("--output", required=True, help="output path prefix")
        p.add_argument("--grid-points", type=int, default=256)
        p.add_argument("--tolerance", type=float, default=None,
                       help="override the per-kind detection/classification tolerance")
        p.add_argument("--k", type=int, default=None, help="slant index (default: all)")
        p.add_argument("--dim", type=int, default=None, help="assert the ambient dimension")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--step", type=float, default=None,
                       help="integrator step override for synthesized curves")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            input_path=args.input,
            output_path=args.output,
            grid_points=args.grid_points,
            tolerance=args.tolerance,
            k=args.k,
            dim=args.dim,
            seed=args.seed,
            step=args.step,
        )
    except SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
