"""Unified command-line entry point with deterministic CSV/JSON emitters.

Subcommands: rep, pw, top, decompose, measure, reduced, spectrum, classical.
Energies print with 12 significant digits, ascending, so golden files are
stable; every JSON output embeds the fully resolved configuration and can be
fed back through --config to reproduce the run bit-identically.  Exit codes:
0 success, 2 validation error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import classical as _classical
from . import measures, peterweyl, rigidbody
from .reduced import (
    Potential,
    build_reduced_hamiltonian,
    problem_from_config,
    to_matrix_market,
)
from .rotation import HalfInt, build_rot_rep, casimir_eigenvalue, su2_compose, wigner_D
from .spectra import NonConvergenceError, bound_state_diagnostic, eigen_lowest

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

__all__ = ["main", "run"]


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _write_csv(stream, header: list[str], rows) -> None:
    writer = csv.writer(stream)
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)


def _emit(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def load_config(path: str) -> dict:
    """Load a TOML or JSON configuration; output JSONs re-load via their embedded config."""
    p = Path(path)
    if not p.exists():
        raise ValueError(f"config file not found: {path}")
    if p.suffix.lower() == ".toml":
        with open(p, "rb") as fh:
            data = tomllib.load(fh)
    else:
        data = json.loads(p.read_text(encoding="utf-8"))
    if isinstance(data, dict) and "config" in data and "result" in data:
        data = data["config"]
    if not isinstance(data, dict):
        raise ValueError("config must be a table/object")
    return data


def _resolved_config(cfg: dict, k: int, seed: int, method: str, tol: float, maxiter, ncv) -> dict:
    model = dict(cfg["model"])
    grid = dict(cfg["grid"])
    grid["axes"] = [dict(ax) for ax in grid["axes"]]
    grid.setdefault("chamber_margin", 1e-2)
    grid.setdefault("sl_constraint", False)
    solver = {"k": k, "seed": seed, "method": method, "tol": tol}
    if maxiter is not None:
        solver["maxiter"] = maxiter
    if ncv is not None:
        solver["ncv"] = ncv
    return {
        "model": {
            "kind": model.get("kind"),
            "A": float(model.get("A", 0.0)),
            "B": float(model.get("B", 0.0)),
            "I": float(model.get("I", 0.0)),
            "n": int(model.get("n", 3)),
            "hbar": float(model.get("hbar", 1.0)),
        },
        "twice_s": int(cfg.get("twice_s", 0)),
        "twice_j": int(cfg.get("twice_j", 0)),
        "grid": grid,
        "potential": dict(cfg.get("potential") or {"kind": "none"}),
        "solver": solver,
    }


# ---------------------------------------------------------------------------
# Subcommands.

def _cmd_rep(args) -> int:
    rows = []
    for twice_j in range(0, args.max_twice_j + 1):
        rep = build_rot_rep(3, HalfInt(twice_j), args.hbar)
        comm = 0.0
        eps = {(1, 2): 3, (2, 3): 1, (3, 1): 2}
        for (a, b), c in eps.items():
            lhs = rep.gen[a - 1] @ rep.gen[b - 1] - rep.gen[b - 1] @ rep.gen[a - 1]
            comm = max(comm, float(np.max(np.abs(lhs - 1j * args.hbar * rep.gen[c - 1]))))
        total = sum(s @ s for s in rep.gen)
        cas = float(np.max(np.abs(total - args.hbar**2 * HalfInt(twice_j).casimir() * np.eye(rep.dim))))
        k = np.array([0.3, -0.4, 0.5])
        d = wigner_D(rep, k)
        unit = float(np.max(np.abs(d.conj().T @ d - np.eye(rep.dim))))
        sign = float(np.max(np.abs(wigner_D(rep, (0, 0, 2 * np.pi)) - (-1.0) ** twice_j * np.eye(rep.dim))))
        rows.append([twice_j, _fmt(comm), _fmt(cas), _fmt(unit), _fmt(sign)])
    buf = io.StringIO()
    _write_csv(buf, ["twice_j", "commutator_residual", "casimir_residual", "unitarity_residual", "sign_rule_residual"], rows)
    _emit(args.out, buf.getvalue())
    return 0


def _cmd_pw(args) -> int:
    data = json.loads(Path(args.file).read_text(encoding="utf-8"))
    terms = {}
    for entry in data:
        twice_j = int(entry["twice_j"])
        real = np.array(entry.get("real", []), dtype=float)
        dim = twice_j + 1
        if real.size == 0:
            real = np.zeros((dim, dim))
        imag = np.array(entry.get("imag", []), dtype=float)
        if imag.size == 0:
            imag = np.zeros((dim, dim))
        terms[HalfInt(twice_j)] = real + 1j * imag
    cls = peterweyl.parity_class(peterweyl.PWCoeffs(terms))
    print(cls.value)
    return 0


def _cmd_top(args) -> int:
    if args.fermionic_only and args.bosonic_only:
        raise ValueError("--fermionic-only and --bosonic-only are mutually exclusive")
    sector = "fermionic" if args.fermionic_only else "bosonic" if args.bosonic_only else "all"
    params = rigidbody.TopParams(I1=args.I1, I2=args.I2, I3=args.I3, hbar=args.hbar)
    twice_j_max = int(round(2 * args.jmax))
    rows = [
        [twice_j, _fmt(energy), mult]
        for twice_j, energy, mult in rigidbody.scan_spectrum(params, twice_j_max, sector)
    ]
    buf = io.StringIO()
    _write_csv(buf, ["twice_j", "energy", "multiplicity"], rows)
    _emit(args.out, buf.getvalue())
    return 0


def _cmd_decompose(args) -> int:
    phi = np.loadtxt(args.matrix, delimiter=",", ndmin=2)
    tp = measures.two_polar(phi)
    out = []
    for name, mat in (("L", tp.L), ("Q", tp.Q.reshape(1, -1)), ("R", tp.R)):
        out.append(name)
        for row in mat:
            out.append(",".join(_fmt(x) for x in row))
    print("\n".join(out))
    return 0


def _cmd_measure(args) -> int:
    if (args.q is None) == (args.Q is None):
        raise ValueError("pass exactly one of --q or --Q")
    if args.q is not None:
        values = [float(x) for x in args.q.split(",")]
        print(_fmt(measures.p_lambda(values)))
    else:
        values = [float(x) for x in args.Q.split(",")]
        print(_fmt(measures.p_l(values)))
    return 0


def _cmd_reduced(args) -> int:
    cfg = load_config(args.config)
    model, rep_s, rep_j, grid, pot = problem_from_config(cfg)
    ham = build_reduced_hamiltonian(model, rep_s, rep_j, grid, pot)
    _emit(args.out, to_matrix_market(ham.matrix))
    print(f"dimension {ham.dim} ({ham.n_nodes} nodes x fiber {ham.fiber_dim}), nnz {ham.matrix.nnz}")
    return 0


def _cmd_spectrum(args) -> int:
    cfg = load_config(args.config)
    solver = dict(cfg.get("solver", {}))
    k = args.k if args.k is not None else int(solver.get("k", 6))
    seed = args.seed if args.seed is not None else int(solver.get("seed", 0))
    method = str(solver.get("method", "auto"))
    tol = float(solver.get("tol", 1e-10))
    maxiter = solver.get("maxiter")
    maxiter = int(maxiter) if maxiter is not None else None
    ncv = solver.get("ncv")
    ncv = int(ncv) if ncv is not None else None
    model, rep_s, rep_j, grid, pot = problem_from_config(cfg)
    ham = build_reduced_hamiltonian(model, rep_s, rep_j, grid, pot)
    result = eigen_lowest(ham, k, seed=seed, method=method, tol=tol, maxiter=maxiter, ncv=ncv)

    scan = None
    flags = ["unscanned"] * k
    if args.scan_box:
        scales = [float(s) for s in args.scan_box.split(",")]
        scan = bound_state_diagnostic(cfg, k, scales, seed=seed)
        flags = scan["flags"]

    rows = [
        [i, _fmt(result.eigenvalues[i]), _fmt(result.residuals[i]), flags[i]]
        for i in range(k)
    ]
    buf = io.StringIO()
    _write_csv(buf, ["index", "energy", "residual", "flag"], rows)
    _emit(args.out_csv, buf.getvalue())

    payload = {
        "config": _resolved_config(cfg, k, seed, method, tol, maxiter, ncv),
        "result": {
            "eigenvalues": [float(x) for x in result.eigenvalues],
            "residuals": [float(x) for x in result.residuals],
            "matrix_norm": result.matrix_norm,
            "method": result.method,
            "grid": result.grid,
            "notes": dict(ham.notes),
            "flags": flags,
        },
    }
    if scan is not None:
        payload["result"]["scan"] = {
            "scales": scan["scales"],
            "energies": [[float(x) for x in row] for row in scan["energies"]],
            "drift": [float(x) for x in scan["drift"]],
            "flags": scan["flags"],
            "note": scan["note"],
        }
    if args.out_json:
        _emit(args.out_json, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def _cmd_classical(args) -> int:
    from .reduced import AffineModel, ModelKind

    kind = {
        "aff-aff": ModelKind.AFF_AFF,
        "met-aff": ModelKind.MET_AFF,
        "aff-met": ModelKind.AFF_MET,
        "dalembert": ModelKind.DALEMBERT,
    }[args.model]
    phi0 = np.loadtxt(args.phi0, delimiter=",", ndmin=2)
    phidot0 = np.loadtxt(args.phidot0, delimiter=",", ndmin=2)
    n = phi0.shape[0]
    model = AffineModel(kind=kind, A=args.A, B=args.B, I=args.I, n=n, hbar=args.hbar)
    state0 = _classical.AffineState(phi=phi0, phidot=phidot0)
    pot = Potential.harmonic(args.kappa) if args.kappa else None
    traj = _classical.integrate(model, state0, args.t, args.dt, potential=pot)

    header = ["t"] + [f"phi_{i}_{j}" for i in range(n) for j in range(n)] + ["T", "energy_drift"]
    if traj.omega_hat_deviation is not None:
        header.append("omega_hat_dev")
    rows = []
    for idx in range(len(traj.times)):
        row = [_fmt(traj.times[idx])]
        row += [_fmt(x) for x in traj.phi[idx].ravel()]
        row += [_fmt(traj.energy[idx]), _fmt(traj.energy_drift[idx])]
        if traj.omega_hat_deviation is not None:
            row.append(_fmt(traj.omega_hat_deviation[idx]))
        rows.append(row)
    buf = io.StringIO()
    _write_csv(buf, header, rows)
    _emit(args.out, buf.getvalue())
    return 0


# ---------------------------------------------------------------------------
# Parser.

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affinetop", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rep", help="representation identity residuals")
    rep_sub = p.add_subparsers(dest="rep_command", required=True)
    pc = rep_sub.add_parser("check", help="print residuals for 2j = 0..max")
    pc.add_argument("--max-twice-j", type=int, default=8)
    pc.add_argument("--hbar", type=float, default=1.0)
    pc.add_argument("--out", default=None)
    pc.set_defaults(func=_cmd_rep)

    p = sub.add_parser("pw", help="coefficient-space operations")
    pw_sub = p.add_subparsers(dest="pw_command", required=True)
    pcl = pw_sub.add_parser("classify", help="parity class of a coefficient file")
    pcl.add_argument("--file", required=True)
    pcl.set_defaults(func=_cmd_pw)

    p = sub.add_parser("top", help="rigid-top spectra as CSV")
    p.add_argument("--I1", type=float, required=True)
    p.add_argument("--I2", type=float, required=True)
    p.add_argument("--I3", type=float, required=True)
    p.add_argument("--jmax", type=float, required=True)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--fermionic-only", action="store_true")
    p.add_argument("--bosonic-only", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_top)

    p = sub.add_parser("decompose", help="two-polar factors of a CSV matrix")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("measure", help="radial measure weights")
    p.add_argument("--q", default=None, help="comma-separated logarithmic invariants")
    p.add_argument("--Q", default=None, help="comma-separated invariants")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("reduced", help="reduced-Hamiltonian assembly")
    red_sub = p.add_subparsers(dest="reduced_command", required=True)
    pb = red_sub.add_parser("build", help="assemble and write the sparse matrix")
    pb.add_argument("--config", required=True)
    pb.add_argument("--out", required=True)
    pb.set_defaults(func=_cmd_reduced)

    p = sub.add_parser("spectrum", help="lowest eigenvalues of a configured problem")
    p.add_argument("--config", required=True)
    p.add_argument("-k", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--scan-box", default=None, help="comma-separated box scale factors")
    p.add_argument("--out-csv", default=None)
    p.add_argument("--out-json", default=None)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("classical", help="integrate a classical trajectory")
    p.add_argument("--model", choices=["aff-aff", "met-aff", "aff-met", "dalembert"], required=True)
    p.add_argument("--phi0", required=True, help="CSV file with the initial configuration")
    p.add_argument("--phidot0", required=True, help="CSV file with the initial velocity")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--A", type=float, default=0.0)
    p.add_argument("--B", type=float, default=0.0)
    p.add_argument("--I", type=float, default=0.0)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--kappa", type=float, default=0.0, help="harmonic dilatation stiffness")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_classical)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


run = main


if __name__ == "__main__":
    sys.exit(main())
