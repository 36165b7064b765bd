"""Command-line front door: one subcommand per diagnostic, CSV + manifest out.

Every run writes tidy (long-format) CSV and a sidecar ``<out>.manifest.json``
recording the tool version, the fully resolved parameters, and derived
summary quantities. ``qwscramble rerun --manifest M`` re-executes a recorded
run and reproduces the CSV outputs byte for byte.

Exit codes: 0 success, 2 usage or configuration error, 3 numerical
degeneracy.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .dynamics import (
    INITIAL_KINDS,
    butterfly_velocity,
    dispersion,
    group_velocity,
    localization_length,
    trajectory_ensemble,
)
from .ensemble import resolve_workers
from .errors import NumericalDegeneracyError
from .krylov import gram_matrix, k_complexity_ensemble, krylov_decompose
from .otoc import NORMALIZATIONS, front_velocity, otoc_grid_ensemble
from .walk import DISORDER_KINDS, DISTRIBUTIONS, DisorderSpec, WalkConfig, centered_labels, to_centered

PROG = "qwscramble"


def parse_angle(text: str) -> float:
    """Angles as raw radians or multiples of pi: '0.785', '0.25pi', 'pi'."""
    s = text.strip().lower()
    try:
        if s.endswith("pi"):
            head = s[:-2].strip()
            factor = 1.0 if head in ("", "+") else -1.0 if head == "-" else float(head)
            return factor * math.pi
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid angle {text!r}") from None


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return repr(float(value))


def write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def manifest_path_for(out: str) -> str:
    base = out[:-4] if out.endswith(".csv") else out
    return base + ".manifest.json"


def _config_from_params(params: dict) -> WalkConfig:
    disorder = DisorderSpec(
        kind=params["disorder"],
        theta0=params["theta0"],
        strength=params["strength"],
        distribution=params["distribution"],
    )
    return WalkConfig(
        sites=params["sites"], steps=params["steps"], disorder=disorder, seed=params["seed"]
    )


# --- subcommand runners: params dict + out path -> (output files, extras) ---

def run_dispersion(params: dict, out: str, workers: int) -> tuple[list[str], dict]:
    theta, k_points = params["theta"], params["k_points"]
    ks = np.linspace(-math.pi, math.pi, k_points)
    rows = [(float(k), dispersion(float(k), theta), group_velocity(float(k), theta)) for k in ks]
    write_csv(out, ["k", "omega", "v_g"], rows)
    try:
        zeta = localization_length(theta)
        zeta_out = "unbounded" if math.isinf(zeta) else zeta
    except ValueError:
        zeta_out = None
    extras = {"butterfly_velocity": butterfly_velocity(theta, k_points), "localization_length": zeta_out}
    return [out], extras


def run_evolve(params: dict, out: str, workers: int) -> tuple[list[str], dict]:
    config = _config_from_params(params)
    result = trajectory_ensemble(config, params["realizations"], params["initial"], workers)
    (p_mean, ipr_mean), (p_err, ipr_err) = result.mean, result.stderr
    labels = centered_labels(config.sites)
    p_mean_c, p_err_c = to_centered(p_mean), to_centered(p_err)
    rows = (
        (t, int(labels[j]), p_mean_c[t, j], p_err_c[t, j])
        for t in range(config.steps + 1)
        for j in range(config.sites)
    )
    write_csv(out, ["t", "x", "p_mean", "p_stderr"], rows)
    ipr_out = (out[:-4] if out.endswith(".csv") else out) + ".ipr.csv"
    write_csv(
        ipr_out,
        ["t", "ipr_mean", "ipr_stderr"],
        ((t, ipr_mean[t], ipr_err[t]) for t in range(config.steps + 1)),
    )
    return [out, ipr_out], {}


def run_otoc(params: dict, out: str, workers: int) -> tuple[list[str], dict]:
    config = _config_from_params(params)
    grid = otoc_grid_ensemble(config, params["pairs"], params["norm"], params["realizations"], workers)
    labels = centered_labels(config.sites)
    rows = []
    for pair in grid.pairs:
        mean_c = to_centered(grid.values[pair])
        err_c = to_centered(grid.stderr[pair])
        for t in range(config.steps + 1):
            for j in range(config.sites):
                rows.append((pair, t, int(labels[j]), mean_c[t, j], err_c[t, j]))
    write_csv(out, ["pair", "t", "l", "c_mean", "c_stderr"], rows)
    fronts = {}
    for pair in grid.pairs:
        fit = front_velocity(grid.values[pair])
        fronts[pair] = (
            None
            if fit is None
            else {"slope": fit.slope, "intercept": fit.intercept, "residual_rms": fit.residual_rms}
        )
    extras = {"butterfly_velocity": butterfly_velocity(params["theta0"]), "front_velocity": fronts}
    return [out], extras


def run_krylov(params: dict, out: str, workers: int) -> tuple[list[str], dict]:
    config = _config_from_params(params)
    site = params["site"] % config.sites  # centered label -> internal index
    emit = params["emit"]
    if emit == "k":
        mean, err = k_complexity_ensemble(config, params["mu"], site, params["realizations"], workers)
        write_csv(out, ["t", "k_mean", "k_stderr"], ((t, mean[t], err[t]) for t in range(len(mean))))
        return [out], {}
    if params["realizations"] != 1:
        raise ValueError(f"--emit {emit} reports a single run; use --realizations 1")
    gram = gram_matrix(config, params["mu"], site)
    if emit == "gram":
        n = gram.shape[0]
        write_csv(out, ["n", "m", "value"], ((i, j, gram[i, j]) for i in range(n) for j in range(n)))
        return [out], {}
    decomp = krylov_decompose(gram)
    if emit == "norms":
        write_csv(out, ["n", "norm_A"], enumerate(decomp.norms))
    else:  # phi
        write_csv(
            out,
            ["n", "t", "value"],
            (
                (i, t, decomp.amplitudes[i, t])
                for i in range(decomp.rank)
                for t in range(gram.shape[0])
            ),
        )
    return [out], {"rank": decomp.rank, "exhausted_at": decomp.exhausted_at}


RUNNERS = {
    "dispersion": run_dispersion,
    "evolve": run_evolve,
    "otoc": run_otoc,
    "krylov": run_krylov,
}


def write_manifest(
    command: str, params: dict, out: str, outputs: list[str], extras: dict, workers: int, elapsed: float
) -> str:
    path = manifest_path_for(out)
    doc = {
        "tool": PROG,
        "version": __version__,
        "command": command,
        "params": params,
        "out": out,
        "base_seed": params.get("seed"),
        "normalization": params.get("norm"),
        "workers": workers,
        "wall_clock_seconds": elapsed,
        "outputs": outputs,
        "extras": extras,
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return path


def execute(command: str, params: dict, out: str, workers: int | None = None) -> list[str]:
    """Run one recorded-or-fresh command; returns all files written."""
    resolved_workers = resolve_workers(workers)
    start = time.perf_counter()
    outputs, extras = RUNNERS[command](params, out, resolved_workers)
    elapsed = time.perf_counter() - start
    manifest = write_manifest(command, params, out, outputs, extras, resolved_workers, elapsed)
    return outputs + [manifest]


def _walk_params_from_args(args) -> dict:
    return {
        "theta0": args.theta,
        "sites": args.sites,
        "steps": args.steps,
        "disorder": args.disorder,
        "strength": args.strength,
        "distribution": args.distribution,
        "realizations": args.realizations,
        "seed": args.seed,
    }


def _params_from_args(args) -> dict:
    if args.command == "dispersion":
        return {"theta": args.theta, "k_points": args.k_points}
    params = _walk_params_from_args(args)
    if args.command == "evolve":
        params["initial"] = args.initial
    elif args.command == "otoc":
        pairs = list(dict.fromkeys(p.strip() for p in args.pairs.split(",") if p.strip()))
        if not pairs:
            raise ValueError("--pairs must name at least one Pauli pair, e.g. xx,zz")
        params["pairs"] = pairs
        params["norm"] = args.norm
    elif args.command == "krylov":
        params["mu"] = args.mu
        params["site"] = args.site
        params["emit"] = args.emit
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Scrambling diagnostics for 1D discrete-time quantum walks",
    )
    parser.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", required=True, help="output CSV path")
    common.add_argument("--workers", type=int, default=None, help="parallel workers (default: $QWSCRAMBLE_WORKERS or 1)")

    walk = argparse.ArgumentParser(add_help=False)
    walk.add_argument("--theta", type=parse_angle, default=math.pi / 4, help="mean coin angle; radians or multiples of pi like 0.25pi")
    walk.add_argument("--sites", type=int, default=100, help="ring size L (even)")
    walk.add_argument("--steps", type=int, default=50, help="number of steps T")
    walk.add_argument("--disorder", choices=DISORDER_KINDS, default="clean")
    walk.add_argument("--strength", type=parse_angle, default=0.0, help="disorder width W in [0, pi]")
    walk.add_argument("--distribution", choices=DISTRIBUTIONS, default="uniform")
    walk.add_argument("--realizations", type=int, default=1)
    walk.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("dispersion", parents=[common], help="band dispersion and group velocity table")
    p.add_argument("--theta", type=parse_angle, default=math.pi / 4)
    p.add_argument("--k-points", type=int, default=257)

    p = sub.add_parser("evolve", parents=[common, walk], help="position distributions and participation ratios")
    p.add_argument("--initial", choices=INITIAL_KINDS, default="symmetric")

    p = sub.add_parser("otoc", parents=[common, walk], help="squared-commutator correlator grids")
    p.add_argument("--pairs", default="xx", help="comma-separated Pauli pairs, e.g. xx,zz,xy")
    p.add_argument("--norm", choices=NORMALIZATIONS, default="1/D")

    p = sub.add_parser("krylov", parents=[common, walk], help="snapshot Gram matrix and complexity growth")
    p.add_argument("--mu", choices=("x", "y", "z"), default="x")
    p.add_argument("--site", type=int, default=0, help="operator site (centered label)")
    p.add_argument("--emit", choices=("gram", "norms", "phi", "k"), default="k")

    p = sub.add_parser("rerun", help="re-execute a recorded run from its manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out-dir", default=None, help="redirect outputs into this directory")
    p.add_argument("--workers", type=int, default=None)
    return parser


def _do_rerun(args) -> int:
    import os

    with open(args.manifest, encoding="utf-8") as handle:
        doc = json.load(handle)
    command, params, out = doc["command"], doc["params"], doc["out"]
    if command not in RUNNERS:
        raise ValueError(f"manifest names unknown command {command!r}")
    if args.out_dir is not None:
        os.makedirs(args.out_dir, exist_ok=True)
        out = os.path.join(args.out_dir, os.path.basename(out))
    for path in execute(command, params, out, args.workers):
        print(path)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "rerun":
            return _do_rerun(args)
        params = _params_from_args(args)
        for path in execute(args.command, params, args.out, args.workers):
            print(path)
        return 0
    except NumericalDegeneracyError as exc:
        print(f"{PROG}: numerical degeneracy: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
