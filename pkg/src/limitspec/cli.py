"""Command-line front end.

One JSON config per invocation describes the operator, the grid, command
parameters, and output paths; the tool writes the region as JSON, optionally a
CSV of marked cell centers and an SVG rendering, and prints a one-line
summary.  Identical configs produce byte-identical JSON and CSV; the SVG is
rendered with a fixed hash salt and no timestamp so it is reproducible too.

Exit codes: 0 success, 2 config error, 3 capacity error, 4 verification
returned a false verdict.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .limitops import (
    EssentialOptions,
    essential_spectrum,
    favard_report,
    random_bidiagonal_spectrum,
    verification_report_to_json,
    verify_limit_operator,
    verify_randprod,
)
from .operators import BandOperator, CapacityError, operator_from_json
from .potentials import Constant, complex_from_json, sequence_spec_from_json
from .spectra import (
    SpectralRegion,
    _common_period,
    laurent_spectrum,
    periodic_spectrum,
    pseudospectrum,
    region_to_json,
)

__all__ = ["ConfigError", "JobConfig", "run", "main", "entrypoint"]

COMMANDS = ("spectrum", "essential", "pseudospectrum", "random-spec", "limitops", "verify")
_REGION_COMMANDS = ("spectrum", "essential", "pseudospectrum", "random-spec")

_TOP_KEYS = {"command", "operator", "grid", "params", "output"}
_GRID_KEYS = {"bbox", "nx", "ny"}
_OUTPUT_KEYS = {"json", "csv", "svg"}
_PARAM_KEYS = {
    "spectrum": {"q", "thetaSamples"},
    "essential": {"wordLen", "phaseSamples", "thetaSamples", "convergents"},
    "pseudospectrum": {"epsilon", "n"},
    "random-spec": {"alphabet", "epsilon"},
    "limitops": {"samples", "n"},
    "verify": {"kind", "h", "limitOperator", "m", "steps", "tol",
               "lambda", "sigma", "tau", "windowRadius"},
}


class ConfigError(Exception):
    """Schema violation in the job config; reported with the offending field."""


@dataclass(frozen=True)
class JobConfig:
    command: str
    operator: dict | None
    grid: dict | None
    params: dict
    output: dict


def _fail(path: str, msg: str) -> None:
    raise ConfigError(f"{path}: {msg}")


def _expect_map(obj, path: str) -> dict:
    if not isinstance(obj, dict):
        _fail(path, f"expected an object, got {type(obj).__name__}")
    return obj


def _expect_int(obj, path: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        _fail(path, f"expected an integer, got {obj!r}")
    return int(obj)


def _expect_num(obj, path: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        _fail(path, f"expected a number, got {obj!r}")
    return float(obj)


def load_config(path: str | Path) -> JobConfig:
    """Parse and schema-check a job config; all validation happens here."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    _expect_map(obj, "config")
    unknown = set(obj) - _TOP_KEYS
    if unknown:
        _fail("config", f"unknown keys {sorted(unknown)}")
    command = obj.get("command")
    if command not in COMMANDS:
        _fail("config.command", f"expected one of {list(COMMANDS)}, got {command!r}")

    params = _expect_map(obj.get("params", {}), "config.params")
    bad = set(params) - _PARAM_KEYS[command]
    if bad:
        _fail("config.params", f"unknown keys {sorted(bad)} for command {command!r}")

    grid = obj.get("grid")
    if command in _REGION_COMMANDS:
        grid = _expect_map(grid if grid is not None else {}, "config.grid")
        unknown = set(grid) - _GRID_KEYS
        if unknown:
            _fail("config.grid", f"unknown keys {sorted(unknown)}")
        for axis in ("nx", "ny"):
            if axis not in grid:
                _fail(f"config.grid.{axis}", "required")
            v = _expect_int(grid[axis], f"config.grid.{axis}")
            if not 16 <= v <= 2048:
                _fail(f"config.grid.{axis}", f"must lie in [16, 2048], got {v}")
        if "bbox" in grid:
            bbox = grid["bbox"]
            if (
                not isinstance(bbox, list)
                or len(bbox) != 4
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in bbox)
            ):
                _fail("config.grid.bbox", f"expected [reMin, reMax, imMin, imMax], got {bbox!r}")
            if not (bbox[0] < bbox[1] and bbox[2] < bbox[3]):
                _fail("config.grid.bbox", f"degenerate extents {bbox!r}")
        elif command == "pseudospectrum":
            _fail("config.grid.bbox", "required for pseudospectrum (no automatic extent)")

    operator = obj.get("operator")
    if command == "random-spec":
        if operator is not None:
            _fail("config.operator", "random-spec takes its alphabet from params, not an operator")
    else:
        if operator is None:
            _fail("config.operator", "required")
        _expect_map(operator, "config.operator")

    output = _expect_map(obj.get("output", {}), "config.output")
    unknown = set(output) - _OUTPUT_KEYS
    if unknown:
        _fail("config.output", f"unknown keys {sorted(unknown)}")
    for key, val in output.items():
        if not isinstance(val, str) or not val:
            _fail(f"config.output.{key}", f"expected a nonempty path string, got {val!r}")

    _validate_params(command, params)
    return JobConfig(command, operator, grid, params, dict(output))


def _validate_params(command: str, params: dict) -> None:
    def need(key):
        if key not in params:
            _fail(f"config.params.{key}", f"required for command {command!r}")

    if command == "spectrum":
        if "q" in params:
            q = _expect_int(params["q"], "config.params.q")
            if q < 1:
                _fail("config.params.q", f"must be >= 1, got {q}")
        if "thetaSamples" in params:
            _expect_int(params["thetaSamples"], "config.params.thetaSamples")
    elif command == "essential":
        for key in ("wordLen", "phaseSamples", "thetaSamples"):
            if key in params:
                v = _expect_int(params[key], f"config.params.{key}")
                if v < 1:
                    _fail(f"config.params.{key}", f"must be >= 1, got {v}")
        if "convergents" in params:
            cv = params["convergents"]
            ok = isinstance(cv, list) and cv and all(
                isinstance(pq, list) and len(pq) == 2 for pq in cv
            )
            if not ok:
                _fail("config.params.convergents", f"expected [[p, q], ...], got {cv!r}")
    elif command == "pseudospectrum":
        need("epsilon")
        need("n")
        if _expect_num(params["epsilon"], "config.params.epsilon") <= 0:
            _fail("config.params.epsilon", "must be positive")
        _expect_int(params["n"], "config.params.n")
    elif command == "random-spec":
        need("alphabet")
        need("epsilon")
        if _expect_num(params["epsilon"], "config.params.epsilon") <= 0:
            _fail("config.params.epsilon", "must be positive")
        alph = params["alphabet"]
        if not isinstance(alph, list) or not alph:
            _fail("config.params.alphabet", f"expected a nonempty list, got {alph!r}")
    elif command == "limitops":
        for key in ("samples", "n"):
            if key in params:
                v = _expect_int(params[key], f"config.params.{key}")
                if v < 1:
                    _fail(f"config.params.{key}", f"must be >= 1, got {v}")
    elif command == "verify":
        kind = params.get("kind", "limit-operator")
        if kind == "limit-operator":
            for key in ("h", "limitOperator", "m", "steps", "tol"):
                need(key)
            _expect_map(params["h"], "config.params.h")
            _expect_map(params["limitOperator"], "config.params.limitOperator")
            _expect_int(params["m"], "config.params.m")
            _expect_int(params["steps"], "config.params.steps")
            _expect_num(params["tol"], "config.params.tol")
        elif kind == "randprod":
            for key in ("lambda", "sigma", "tau", "windowRadius"):
                need(key)
            _expect_int(params["windowRadius"], "config.params.windowRadius")
        else:
            _fail("config.params.kind", f"expected 'limit-operator' or 'randprod', got {kind!r}")


# --------------------------------------------------------------------------
# Output writers.

def _write_atomic(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, indent=2, sort_keys=True) + "\n").encode()


def _csv_bytes(points: np.ndarray) -> bytes:
    lines = ["re,im"]
    lines.extend(f"{z.real:.17g},{z.imag:.17g}" for z in points)
    return ("\n".join(lines) + "\n").encode()


def _render_svg(region: SpectralRegion, path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.colors import ListedColormap
    from matplotlib.patches import Circle as CirclePatch

    from .spectra import Circle, ClosedDisk, RealInterval

    plt.rcParams["svg.hashsalt"] = "limitspec"
    re_min, re_max, im_min, im_max = region.bbox
    aspect = (im_max - im_min) / (re_max - re_min)
    fig, ax = plt.subplots(figsize=(6.4, max(2.2, min(9.0, 6.4 * aspect))))
    ax.imshow(
        region.mask,
        origin="lower",
        extent=(re_min, re_max, im_min, im_max),
        cmap=ListedColormap(["#ffffff", "#2c67a8"]),
        vmin=0,
        vmax=1,
        interpolation="nearest",
        aspect="auto",
    )
    for comp in region.components:
        if isinstance(comp, RealInterval):
            ax.plot([comp.a, comp.b], [0.0, 0.0], color="#c83737", lw=1.6, solid_capstyle="butt")
        elif isinstance(comp, Circle):
            ax.add_patch(CirclePatch(
                (comp.center.real, comp.center.imag), comp.radius,
                fill=False, ec="#c83737", lw=1.2,
            ))
        elif isinstance(comp, ClosedDisk):
            ax.add_patch(CirclePatch(
                (comp.center.real, comp.center.imag), comp.radius,
                fill=False, ec="#c83737", lw=1.2, ls="--",
            ))
    ax.set_xlim(re_min, re_max)
    ax.set_ylim(im_min, im_max)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(str(region.meta.get("kind", "region")))
    fig.tight_layout()
    tmp = path.with_name(path.name + ".tmp")
    fig.savefig(tmp, format="svg", metadata={"Date": None})
    plt.close(fig)
    os.replace(tmp, path)


# --------------------------------------------------------------------------
# Command execution.

def _grid_args(cfg: JobConfig):
    grid = cfg.grid or {}
    bbox = grid.get("bbox")
    return (tuple(bbox) if bbox else None), int(grid["nx"]), int(grid["ny"])


def _build_operator(cfg: JobConfig) -> BandOperator:
    try:
        return operator_from_json(cfg.operator)
    except ValueError as exc:
        raise ConfigError(f"config.operator: {exc}") from None


def _compute_region(cfg: JobConfig, threads: int) -> SpectralRegion:
    bbox, nx, ny = _grid_args(cfg)
    params = cfg.params
    if cfg.command == "spectrum":
        a = _build_operator(cfg)
        theta = int(params.get("thetaSamples", 256))
        if "q" in params:
            return periodic_spectrum(a, int(params["q"]), theta, bbox=bbox, nx=nx, ny=ny)
        if all(isinstance(p, Constant) for _, p in a.diagonals):
            return laurent_spectrum(a, theta, bbox=bbox, nx=nx, ny=ny)
        return periodic_spectrum(a, _common_period(a), theta, bbox=bbox, nx=nx, ny=ny)
    if cfg.command == "essential":
        a = _build_operator(cfg)
        opts = EssentialOptions(
            word_len=int(params.get("wordLen", 4)),
            phase_samples=int(params.get("phaseSamples", 64)),
            theta_samples=int(params.get("thetaSamples", 256)),
            convergents=(
                tuple((int(p), int(q)) for p, q in params["convergents"])
                if "convergents" in params
                else None
            ),
        )
        return essential_spectrum(a, bbox, nx, ny, opts, threads=threads)
    if cfg.command == "pseudospectrum":
        a = _build_operator(cfg)
        return pseudospectrum(
            a, float(params["epsilon"]), bbox, nx, ny, int(params["n"]), threads=threads
        )
    # random-spec
    try:
        alphabet = [complex_from_json(v) for v in params["alphabet"]]
    except ValueError as exc:
        raise ConfigError(f"config.params.alphabet: {exc}") from None
    return random_bidiagonal_spectrum(alphabet, float(params["epsilon"]), bbox, nx, ny)


def run(cfg: JobConfig, out_dir: str | Path = ".", threads: int = 1) -> int:
    """Execute one job; writes artifacts and prints a one-line summary."""
    t0 = time.perf_counter()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    output = dict(cfg.output)
    output.setdefault("json", f"{cfg.command}.json")
    written: list[str] = []
    status = 0

    if cfg.command in _REGION_COMMANDS:
        region = _compute_region(cfg, threads)
        doc = region_to_json(region)
        path = out / output["json"]
        _write_atomic(path, _json_bytes(doc))
        written.append(str(path))
        if "csv" in output:
            path = out / output["csv"]
            _write_atomic(path, _csv_bytes(region.marked_points()))
            written.append(str(path))
        if "svg" in output:
            path = out / output["svg"]
            _render_svg(region, path)
            written.append(str(path))
        info = f"{int(region.mask.sum())}/{region.nx * region.ny} cells marked"
    elif cfg.command == "limitops":
        a = _build_operator(cfg)
        samples = int(cfg.params.get("samples", 16))
        n = int(cfg.params.get("n", 400))
        entries = favard_report(a, samples, n)
        doc = {
            "command": "limitops",
            "heuristic": True,
            "n": n,
            "samples": samples,
            "entries": [
                {"descriptor": d, "lowerNormEstimate": v} for d, v in entries
            ],
        }
        path = out / output["json"]
        _write_atomic(path, _json_bytes(doc))
        written.append(str(path))
        info = f"{len(entries)} members sampled (heuristic)"
    else:  # verify
        kind = cfg.params.get("kind", "limit-operator")
        if kind == "limit-operator":
            a = _build_operator(cfg)
            try:
                h = sequence_spec_from_json(cfg.params["h"])
            except ValueError as exc:
                raise ConfigError(f"config.params.h: {exc}") from None
            try:
                b = operator_from_json(cfg.params["limitOperator"])
            except ValueError as exc:
                raise ConfigError(f"config.params.limitOperator: {exc}") from None
            report = verify_limit_operator(
                a, h, b, int(cfg.params["m"]), int(cfg.params["steps"]), float(cfg.params["tol"])
            )
        else:
            report = verify_randprod(
                complex_from_json(cfg.params["lambda"]),
                complex_from_json(cfg.params["sigma"]),
                complex_from_json(cfg.params["tau"]),
                int(cfg.params["windowRadius"]),
            )
        doc = {"command": "verify", "kind": kind}
        doc.update(verification_report_to_json(report))
        path = out / output["json"]
        _write_atomic(path, _json_bytes(doc))
        written.append(str(path))
        info = f"verdict={report.verdict} maxDiscrepancy={report.max_discrepancy:.3e}"
        if not report.verdict:
            status = 4

    dt = time.perf_counter() - t0
    print(f"{cfg.command}: {info}; wrote {', '.join(written)} ({dt:.2f}s)")
    return status


def _resolve_threads(flag: int | None) -> int:
    if flag is not None:
        return max(1, flag)
    env = os.environ.get("LIMITSPEC_THREADS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise ConfigError(f"LIMITSPEC_THREADS must be an integer, got {env!r}") from None


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="limitspec",
        description="Spectra, essential spectra, and pseudospectra of band operators "
        "over Z via the limit-operator method.",
    )
    parser.add_argument("--config", required=True, help="path to the job config JSON")
    parser.add_argument("--out", default=".", help="output directory (default: .)")
    parser.add_argument("--threads", type=int, default=None,
                        help="parallelism degree (fallback: LIMITSPEC_THREADS)")
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        return run(cfg, args.out, _resolve_threads(args.threads))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())
