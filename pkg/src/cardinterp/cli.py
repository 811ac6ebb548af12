"""Command line entry point.

Subcommands: specfun, check, fundamental, pwgen, interp, sweep.
Numeric tables go to CSV (mandatory headers, '.' decimal, 17 significant
digits so files round-trip exactly); structured reports go to JSON.
Exit codes: 0 success, 1 domain/validation/usage errors (one-line
machine-parsable message on stderr), 2 sweep verdict FAIL.
"""

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import convergence, families, fundamental, interpolation, paleywiener, specfun
from ._backend import backend_name
from .errors import CardinterpError

DEFAULT_SEED = 12345


def fmt(x):
    return format(float(x), ".17g")


@dataclass
class RunConfig:
    subcommand: str
    args: argparse.Namespace
    seed: int = DEFAULT_SEED
    verbosity: int = 0


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1; exit 2 is reserved for sweep verdict FAIL
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: usage: {message}\n")
        sys.exit(1)


def _family_args(p):
    p.add_argument("--family", required=True,
                   choices=list(families.KINDS),
                   help="interpolator family")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--k", type=int, default=0, help="polyharmonic order")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--c", type=float, default=1.0, help="multiquadric shape")
    p.add_argument("--decay-exponent", type=float, default=0.0)


def _spec_from_args(a):
    return families.FamilySpec(
        kind=a.family, dim=a.dim, k=a.k, alpha=a.alpha, c=a.c,
        decay_exponent=getattr(a, "decay_exponent", 0.0),
    )


def _grid_args(p, dim_default=1):
    p.add_argument("--grid-J", type=int, default=0, dest="grid_j",
                   help="window cells per side (default 8 for dim 1, 4 for dim 2)")
    p.add_argument("--grid-M", type=int, default=0, dest="grid_m",
                   help="points per cell (default 256 for dim 1, 64 for dim 2)")


def _grid_from_args(a):
    default = fundamental.default_grid(a.dim)
    j = a.grid_j or default.cells_j
    m = a.grid_m or default.points_per_cell
    return fundamental.FrequencyGrid(a.dim, j, m)


def _family_label(spec):
    parts = [spec.kind, f"dim={spec.dim}"]
    if spec.kind == families.POLYHARMONIC:
        parts.append(f"k={spec.k}")
    elif spec.kind == families.GAUSSIAN:
        parts.append(f"alpha={spec.alpha:g}")
    else:
        parts.append(f"alpha={spec.alpha:g}")
        parts.append(f"c={spec.c:g}")
    return " ".join(parts)


def _write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def build_parser():
    root = _Parser(prog="cardinterp",
                   description="fundamental functions of cardinal interpolation")
    root.add_argument("--seed", type=int, default=DEFAULT_SEED,
                      help="global seed for randomized suites (default 12345)")
    root.add_argument("-v", "--verbose", action="count", default=0)
    sub = root.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("specfun", parents=[], help="modified Bessel K evaluation")
    spec_sub = p.add_subparsers(dest="specfun_cmd", required=True)
    pe = spec_sub.add_parser("eval", help="print K_order(arg), one value per line")
    pe.add_argument("--order", type=float, required=True)
    pe.add_argument("--arg", type=float, required=True, nargs="+")
    pe.add_argument("--scaled", action="store_true", help="print e^arg K_order(arg)")
    pe.add_argument("--rel-tol", type=float, default=1e-10)
    pe.add_argument("--max-nodes", type=int, default=4096)

    p = sub.add_parser("check", help="regularity report for a parameter sweep")
    _family_args(p)
    p.add_argument("--params", required=True,
                   help="comma-separated increasing parameter values")
    p.add_argument("--grid", type=int, default=65, help="scan points per axis")
    p.add_argument("--jmax", type=int, default=10)
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")

    p = sub.add_parser("fundamental", help="build one kernel, emit transform/spatial CSV")
    _family_args(p)
    _grid_args(p)
    p.add_argument("--emit", default=None, help="CSV of the sampled transform")
    p.add_argument("--emit-spatial", default=None, help="CSV of L on an x grid")
    p.add_argument("--xmax", type=float, default=8.0)
    p.add_argument("--xstep", type=float, default=0.01)

    p = sub.add_parser("pwgen", help="sample a band-limited test function")
    p.add_argument("--kind", required=True, choices=list(paleywiener.KINDS))
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--window", type=int, default=32)
    p.add_argument("--coeffs", default=None,
                   help="JSON file with [[j, c], ...] pairs for --kind combo")
    p.add_argument("--out", required=True)

    p = sub.add_parser("interp", help="interpolate lattice data from CSV")
    _family_args(p)
    _grid_args(p)
    p.add_argument("--data", required=True, help="CSV: integer coordinates, value")
    p.add_argument("--xmax", type=float, default=8.0)
    p.add_argument("--xstep", type=float, default=0.02)
    p.add_argument("--out", required=True)

    p = sub.add_parser("sweep", help="run a convergence sweep from a plan JSON")
    p.add_argument("--plan", required=True)
    p.add_argument("--out", required=True, help="result CSV")
    p.add_argument("--verdict", default=None, help="verdict JSON")

    return root


def _cmd_specfun(a):
    cfg = specfun.BesselEvalConfig(rel_tol=a.rel_tol, max_nodes=a.max_nodes)
    for arg in a.arg:
        if a.scaled:
            val = specfun.bessel_k_scaled(a.order, arg, cfg)
        else:
            val = specfun.bessel_k(a.order, arg, cfg)
        print(fmt(val))
    return 0


def _cmd_check(a):
    values = [float(v) for v in a.params.split(",") if v.strip()]
    specs = []
    for v in values:
        base = dict(k=a.k, alpha=a.alpha, c=a.c)
        spec = families.FamilySpec(kind=a.family, dim=a.dim, **base)
        specs.append(spec.with_parameter(v))
    if a.dim == 1:
        xi = np.linspace(0.0, math.pi, a.grid).reshape(-1, 1)
    else:
        xi = None
    report = families.regularity_report(specs, xi_grid=xi, j_max=a.jmax)
    text = json.dumps(report.to_dict(), indent=2, sort_keys=True)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _cmd_fundamental(a):
    spec = _spec_from_args(a)
    grid = _grid_from_args(a)
    fund = fundamental.build_lhat(spec, grid)
    label = _family_label(spec)
    if a.emit:
        axis = grid.axis()
        if spec.dim == 1:
            rows = [(fmt(x), fmt(v)) for x, v in zip(axis, fund.lhat_values)]
            _write_csv(a.emit, ["xi", f"lhat[{label}]"], rows)
        else:
            vals = fund.lhat_values
            rows = [
                (fmt(axis[i]), fmt(axis[j]), fmt(vals[i, j]))
                for i in range(axis.size) for j in range(axis.size)
            ]
            _write_csv(a.emit, ["xi1", "xi2", f"lhat[{label}]"], rows)
    if a.emit_spatial:
        n = int(round(2.0 * a.xmax / a.xstep))
        xs = np.linspace(-a.xmax, a.xmax, n + 1)
        if spec.dim == 1:
            vals = fundamental.eval_L_batch(fund, xs)
            rows = [(fmt(x), fmt(v)) for x, v in zip(xs, vals)]
            _write_csv(a.emit_spatial, ["x", f"L[{label}]"], rows)
        else:
            pts = np.stack(np.meshgrid(xs, xs, indexing="ij"), axis=-1).reshape(-1, 2)
            vals = fundamental.eval_L_batch(fund, pts)
            rows = [
                (fmt(p[0]), fmt(p[1]), fmt(v)) for p, v in zip(pts, vals)
            ]
            _write_csv(a.emit_spatial, ["x1", "x2", f"L[{label}]"], rows)
    return 0


def _cmd_pwgen(a):
    coeffs = ()
    if a.kind == paleywiener.FINITE_SINC_COMBO:
        if not a.coeffs:
            raise CardinterpError("--kind combo requires --coeffs JSON file")
        with open(a.coeffs, "r", encoding="utf-8") as fh:
            pairs = json.load(fh)
        coeffs = tuple(
            ((tuple(int(v) for v in j) if isinstance(j, list) else (int(j),)), float(c))
            for j, c in pairs
        )
    f = paleywiener.BandlimitedFunction(a.kind, a.dim, coeffs)
    data = paleywiener.sample_lattice(f, a.window)
    lattice = data.lattice_points().astype(int)
    header = [f"j{i+1}" for i in range(a.dim)] if a.dim > 1 else ["j"]
    rows = [
        tuple(str(int(c)) for c in pt) + (fmt(v),)
        for pt, v in zip(lattice, data.values.ravel())
    ]
    _write_csv(a.out, header + ["value"], rows)
    return 0


def _read_lattice_csv(path, dim):
    with open(path, "r", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if len(header) != dim + 1:
            raise CardinterpError(
                f"data CSV has {len(header)} columns, expected {dim + 1}"
            )
        entries = {}
        for row in reader:
            if not row:
                continue
            j = tuple(int(float(v)) for v in row[:dim])
            entries[j] = float(row[dim])
    radius = max((max(abs(c) for c in j) for j in entries), default=1)
    radius = max(radius, 1)
    values = np.zeros((2 * radius + 1,) * dim)
    for j, v in entries.items():
        values[tuple(c + radius for c in j)] = v
    return interpolation.LatticeData(dim, radius, values)


def _cmd_interp(a):
    spec = _spec_from_args(a)
    grid = _grid_from_args(a)
    data = _read_lattice_csv(a.data, spec.dim)
    fund = fundamental.build_lhat(spec, grid)
    n = int(round(2.0 * a.xmax / a.xstep))
    xs = np.linspace(-a.xmax, a.xmax, n + 1)
    label = _family_label(spec)
    if spec.dim == 1:
        vals = interpolation.interpolate_grid(fund, data, xs)
        rows = [(fmt(x), fmt(v)) for x, v in zip(xs, vals)]
        _write_csv(a.out, ["x", f"interp[{label}]"], rows)
    else:
        pts = np.stack(np.meshgrid(xs, xs, indexing="ij"), axis=-1).reshape(-1, 2)
        vals = interpolation.interpolate_grid(fund, data, pts)
        rows = [(fmt(p[0]), fmt(p[1]), fmt(v)) for p, v in zip(pts, vals)]
        _write_csv(a.out, ["x1", "x2", f"interp[{label}]"], rows)
    return 0


def _cmd_sweep(a):
    try:
        plan = convergence.SweepPlan.from_json(a.plan)
    except FileNotFoundError:
        raise CardinterpError(f"plan file not found: {a.plan}")
    result = convergence.run_sweep(plan)
    with open(a.out, "w", newline="", encoding="utf-8") as fh:
        fh.write("\n".join(result.to_csv_lines()) + "\n")
    verdict = convergence.judge(result, plan)
    if a.verdict:
        with open(a.verdict, "w", encoding="utf-8") as fh:
            json.dump(verdict.to_dict(), fh, indent=2)
            fh.write("\n")
    for name, ok, detail in verdict.checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
    print(f"verdict: {'PASS' if verdict.passed else 'FAIL'}")
    return 0 if verdict.passed else 2


_COMMANDS = {
    "specfun": _cmd_specfun,
    "check": _cmd_check,
    "fundamental": _cmd_fundamental,
    "pwgen": _cmd_pwgen,
    "interp": _cmd_interp,
    "sweep": _cmd_sweep,
}


def dispatch(argv):
    """Run one command line; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(subcommand=args.subcommand, args=args,
                       seed=args.seed, verbosity=args.verbose)
    if config.verbosity:
        sys.stderr.write(f"backend: {backend_name()}\n")
    try:
        return _COMMANDS[args.subcommand](args)
    except CardinterpError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: FileNotFoundError: {exc}\n")
        return 1


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
