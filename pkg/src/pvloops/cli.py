"""Command-line interface: ``pvloops {invariants,canonicalize,verify,simulate,momentum}``.

Structures are read and written as JSON (each document carries a ``schema``
tag), time series as CSV.  Exit codes: 0 success, 1 a check failed, the
simulation halted or compared functionals differ, 2 usage or validation
error.  Every report embeds the seed and a hash of the command configuration.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .dynamics import BlobParams, SimState, csv_header, make_state, run
from .errors import SimulationHalted
from .geometry import ClosedCurve, resample
from .hamiltonians import dictionary_bounds, random_dictionary
from .objects import (
    PointedVortexLoop,
    PointVortexConfig,
    VortexLoop,
    canonicalize,
    is_prequantizable,
    orbit_invariants,
    point_partition,
    realize,
    total_vorticity,
    zm_canonical_rep,
)
from .spectral import TrigInterpolant, grid
from .symplectic import momentum_equal, momentum_table
from .verify import SUITE_NAMES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 0


class UsageError(Exception):
    """Bad input or flags; reported on stderr with exit code 2."""


@dataclass
class RunConfig:
    command: str
    seed: int | None = None
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for key, val in self.params.items():
            if key.endswith("tol") and val is not None and not val > 0:
                raise UsageError(f"--{key.replace('_', '-')} must be positive")

    @property
    def config_hash(self) -> str:
        blob = json.dumps({"command": self.command, "seed": self.seed, **self.params}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def meta(self) -> dict:
        return {"command": self.command, "seed": self.seed, "config_hash": self.config_hash}


def resolve_seed(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("PVL_SEED")
    if env is None or env == "":
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError as exc:
        raise UsageError(f"PVL_SEED must be an integer, got {env!r}") from exc


# -- documents --------------------------------------------------------------


def read_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        line = text.splitlines()[exc.lineno - 1] if exc.lineno - 1 < len(text.splitlines()) else ""
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}\n    {line.strip()[:80]}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"{path}: top-level JSON value must be an object")
    return data


def _resample_values(values, n: int):
    return TrigInterpolant(np.asarray(values, dtype=float))(grid(n))


def _loop_from_json(data: dict, n: int | None):
    curve = ClosedCurve.from_json(data["curve"])
    density = np.asarray(data["density"], dtype=float)
    if n is not None and n != curve.n_samples:
        density = _resample_values(density, n)
        curve = resample(curve, n)
    return VortexLoop(curve, density)


class _Realized(PointedVortexLoop):
    """Pointed loop read from a canonical embedding; remembers its partials."""

    def __init__(self, loop, marks, circulations, partials):
        super().__init__(loop, marks, circulations)
        object.__setattr__(self, "partials", [float(w) for w in partials])


def _loop_doc(data: dict, n: int | None, path: str):
    schema = data.get("schema")
    if schema == "pvl/1":
        for key in ("curve", "density", "marks", "circulations"):
            if key not in data:
                raise UsageError(f"{path}: pvl/1 document lacks {key!r}")
        return PointedVortexLoop(_loop_from_json(data, n), data["marks"], data["circulations"])
    if schema == "loop/1":
        return _loop_from_json(data, n)
    if schema == "curve/1" and "partials" in data:
        # a canonical embedding as written by ``canonicalize``
        curve = ClosedCurve.from_json(data)
        if n is not None and n != curve.n_samples:
            curve = resample(curve, n)
        pvl = realize(curve, data["partials"], data["circulations"])
        return _Realized(pvl.loop, pvl.marks, pvl.circulations, data["partials"])
    raise UsageError(f"{path}: unknown schema {schema!r}")


def load_object(path: str, n: int | None = None):
    """PointedVortexLoop, VortexLoop, PointVortexConfig or SimState from a JSON file."""
    data = read_json(path)
    schema = data.get("schema")
    try:
        if schema == "pvc/1":
            return PointVortexConfig.from_json(data)
        if schema == "simstate/1":
            config = PointVortexConfig.from_json(data["config"]) if "config" in data else None
            loop = _loop_doc(data["loop"], n, path) if "loop" in data else None
            return make_state(config, loop, data.get("time", 0.0))
        return _loop_doc(data, n, path)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: invalid {schema} document: {exc}") from exc


def _points_of(obj) -> list[np.ndarray]:
    if isinstance(obj, PointVortexConfig):
        return [obj.points]
    if isinstance(obj, PointedVortexLoop):
        return [obj.curve.points, obj.marked_points]
    if isinstance(obj, VortexLoop):
        return [obj.curve.points]
    if isinstance(obj, SimState):
        pts = []
        if obj.loop is not None:
            pts.append(obj.loop.curve.points)
        if obj.config is not None:
            pts.append(obj.config.points)
        return pts
    raise UsageError(f"no points for {type(obj).__name__}")


def emit(doc: dict, output: str | None) -> None:
    text = json.dumps(doc, indent=1) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _require_pvl(obj, path) -> PointedVortexLoop:
    if not isinstance(obj, PointedVortexLoop):
        raise UsageError(f"{path}: expected a pointed vortex loop (schema pvl/1)")
    return obj


# -- commands -----------------------------------------------------------------


def cmd_invariants(args) -> int:
    pvl = _require_pvl(load_object(args.input, args.n), args.input)
    cfg = RunConfig("invariants", resolve_seed(args.seed), {"tol": args.tol, "pq_tol": args.pq_tol, "n": args.n})
    inv = orbit_invariants(pvl, args.tol)
    omega = total_vorticity(pvl)
    doc = {
        "schema": "invariants/1",
        **inv.to_json(),
        "omega": omega,
        "partition": point_partition(pvl.circulations, args.tol),
        "prequantizable": is_prequantizable(inv.area, omega, args.pq_tol),
        **cfg.meta(),
    }
    emit(doc, args.output)
    return EXIT_OK


def cmd_canonicalize(args) -> int:
    pvl = _require_pvl(load_object(args.input, args.n), args.input)
    cfg = RunConfig("canonicalize", resolve_seed(args.seed), {"quotient": args.quotient, "tol": args.tol, "n": args.n})
    inv = orbit_invariants(pvl, args.tol)
    g = canonicalize(pvl)
    if args.quotient:
        g = zm_canonical_rep(g, inv.m)
    doc = g.to_json()
    partials = list(inv.partials)
    if isinstance(pvl, _Realized):
        # already canonical: keep the stated partials so reruns are byte-stable
        partials = list(pvl.partials)
    doc["partials"] = partials
    doc["circulations"] = list(inv.circulations)
    if args.quotient:
        doc["m"] = inv.m
    doc.update(cfg.meta())
    emit(doc, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = resolve_seed(args.seed)
    cfg = RunConfig("verify", seed, {"suite": args.suite, "tol": args.tol})
    checks = run_suite(args.suite, seed, args.tol)
    ok = all(c.passed for c in checks)
    doc = {
        "schema": "verify/1",
        "suite": args.suite,
        "pass": ok,
        "checks": [c.to_json() for c in checks],
        **cfg.meta(),
    }
    emit(doc, args.output)
    for c in checks:
        if not c.passed:
            print(f"FAIL {c.check}: {c.max_error:.3e} vs {c.tolerance:.1e}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def _state_of(obj) -> SimState:
    if isinstance(obj, SimState):
        return obj
    if isinstance(obj, PointVortexConfig):
        return make_state(config=obj)
    return make_state(loop=obj)


def _fmt(x: float) -> str:
    return "nan" if not math.isfinite(x) else repr(float(x))


def cmd_simulate(args) -> int:
    if args.plot and not args.output:
        raise UsageError("--plot writes figures next to the CSV and needs --output")
    if args.T < 0 or not math.isfinite(args.T):
        raise UsageError("--T must be a finite non-negative time")
    if args.T > 0 and not args.dt > 0:
        raise UsageError("--dt must be positive")
    if args.stride < 1:
        raise UsageError("--stride must be positive")
    state = _state_of(load_object(args.input, args.n))
    seed = resolve_seed(args.seed)
    blob = BlobParams(args.delta, args.refine)
    cfg = RunConfig(
        "simulate",
        seed,
        {"T": args.T, "dt": args.dt, "delta": args.delta, "refine": args.refine, "scheme": args.scheme,
         "stride": args.stride, "n": args.n},
    )
    k = state.loop.k if isinstance(state.loop, PointedVortexLoop) else 0
    fh = open(args.output, "w", newline="") if args.output else sys.stdout
    writer = csv.writer(fh, lineterminator="\n")
    fh.write(f"# pvloops simulate seed={seed} config_hash={cfg.config_hash}\n")
    writer.writerow(csv_header(k))

    def on_row(d):
        writer.writerow([_fmt(x) for x in d.row()])
        fh.flush()

    code = EXIT_OK
    try:
        rows, final = run(state, args.T, args.dt, blob, args.scheme, args.stride, on_row)
    except SimulationHalted as exc:
        print(f"simulation halted: {exc}", file=sys.stderr)
        rows, final, code = exc.rows or [], exc.state or state, EXIT_FAIL
    finally:
        if fh is not sys.stdout:
            fh.close()
    if args.final:
        doc = final.to_json()
        doc["halted"] = code != EXIT_OK
        doc.update(cfg.meta())
        emit(doc, args.final)
    if args.plot and rows:
        from .plotting import figure_paths, plot_drift, plot_states

        drift_png, state_png = figure_paths(args.output)
        plot_drift(rows, drift_png)
        plot_states(state, final, state_png)
    return code


def cmd_momentum(args) -> int:
    seed = resolve_seed(args.seed)
    cfg = RunConfig(
        "momentum", seed, {"dict_size": args.dict_size, "tol": args.tol, "n": args.n, "compare": bool(args.compare)}
    )
    a = load_object(args.input, args.n)
    objs = [a]
    if args.compare:
        objs.append(load_object(args.compare, args.n))
    for o in objs:
        if isinstance(o, SimState):
            raise UsageError("momentum takes a pvl/1, loop/1 or pvc/1 document")
    if args.dict_size < 1:
        raise UsageError("--dict-size must be positive")
    center, half = dictionary_bounds(*[p for o in objs for p in _points_of(o)])
    dictionary = random_dictionary(seed, args.dict_size, center, half)
    values = momentum_table(a, dictionary)
    doc: dict[str, Any] = {
        "schema": "momentum/1",
        "values": values.tolist(),
        "dictionary": [h.to_json() for h in dictionary],
    }
    code = EXIT_OK
    if args.compare:
        other = momentum_table(objs[1], dictionary)
        equal = momentum_equal(a, objs[1], dictionary, args.tol)
        doc["compare_values"] = other.tolist()
        doc["max_abs_diff"] = float(np.max(np.abs(values - other)))
        doc["equal"] = equal
        code = EXIT_OK if equal else EXIT_FAIL
    doc.update(cfg.meta())
    emit(doc, args.output)
    return code


# -- argument parsing ---------------------------------------------------------


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pvloops", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n=True):
        sp.add_argument("--seed", type=int, help="recorded in the report (default $PVL_SEED, else 0)")
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")
        if n:
            sp.add_argument("--n", type=_positive_int, help="resample loops to this many samples (power of two)")

    sp = sub.add_parser("invariants", help="orbit invariants of a pointed vortex loop")
    sp.add_argument("--input", "-i", required=True)
    sp.add_argument("--tol", type=float, default=1e-9, help="relative tolerance of symmetry detection")
    sp.add_argument("--pq-tol", type=float, default=1e-12, help="tolerance of the integrality test")
    common(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("canonicalize", help="canonical embedding of a pointed vortex loop")
    sp.add_argument("--input", "-i", required=True)
    sp.add_argument("--quotient", action="store_true", help="pick the Z_m representative")
    sp.add_argument("--tol", type=float, default=1e-9, help="relative tolerance of symmetry detection")
    common(sp)
    sp.set_defaults(func=cmd_canonicalize)

    sp = sub.add_parser("verify", help="run a property-check suite")
    sp.add_argument("suite", choices=SUITE_NAMES)
    sp.add_argument("--tol", type=float, default=1.0, help="multiplier on upper-bound tolerances")
    common(sp, n=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("simulate", help="vortex-blob evolution with diagnostics CSV")
    sp.add_argument("--input", "-i", required=True)
    sp.add_argument("--T", type=float, default=1.0)
    sp.add_argument("--dt", type=float, default=0.01)
    sp.add_argument("--delta", type=float, help="blob size (default half the mean node spacing)")
    sp.add_argument("--refine", type=_positive_int, default=1, help="source refinement of the loop quadrature")
    sp.add_argument("--scheme", choices=("rk4", "midpoint"), default="rk4")
    sp.add_argument("--stride", type=int, default=1, help="steps between diagnostic rows")
    sp.add_argument("--final", help="write the final (or last valid) state JSON here")
    sp.add_argument("--plot", action="store_true", help="render drift and state PNGs next to --output")
    common(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("momentum", help="momentum-map values on a seeded bump dictionary")
    sp.add_argument("--input", "-i", required=True)
    sp.add_argument("--compare", help="second document; exit 0 iff the functionals agree")
    sp.add_argument("--dict-size", type=int, default=64)
    sp.add_argument("--tol", type=float, default=1e-10)
    common(sp)
    sp.set_defaults(func=cmd_momentum)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pvloops {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # domain validation (InvalidArgument and friends)
        print(f"pvloops {args.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
