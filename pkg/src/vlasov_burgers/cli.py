"""Command-line driver: single runs, convergence/conservation studies, and
projection-order studies, all emitting CSV.

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""

import argparse
import csv
import os
import sys

from .diagnostics import CSV_HEADERS, error_pair, rates
from .errors import InvalidArgumentError, NumericalFailureError
from .runner import (
    convergence_study,
    projection_study_1d,
    projection_study_2d,
    simulate,
)
from .scenarios import SCENARIO_IDS, scenario

_FLOAT_KEYS = {"eps", "lam", "lam1", "lam2", "tfinal", "cfl"}
_INT_KEYS = {"kx", "kv", "nx", "nv", "threads", "output_every"}
_STR_KEYS = {"scenario", "out", "init", "meshes", "k"}


def _load_config(path):
    values = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InvalidArgumentError(f"bad config line: {line!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key in _FLOAT_KEYS:
                values[key] = float(val)
            elif key in _INT_KEYS:
                values[key] = int(val)
            elif key in _STR_KEYS:
                values[key] = val
            else:
                raise InvalidArgumentError(f"unknown config key: {key!r}")
    return values


def _merge_config(args):
    if getattr(args, "config", None):
        cfg = _load_config(args.config)
        for key, val in cfg.items():
            if getattr(args, key, None) is None:
                setattr(args, key, val)
    return args


def _add_common(p):
    p.add_argument("--scenario", choices=SCENARIO_IDS)
    p.add_argument("--kx", type=int)
    p.add_argument("--kv", type=int)
    p.add_argument("--nx", type=int)
    p.add_argument("--nv", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--lambda1", dest="lam1", type=float)
    p.add_argument("--lambda2", dest="lam2", type=float)
    p.add_argument("--tfinal", type=float)
    p.add_argument("--cfl", type=float)
    p.add_argument("--threads", type=int, help="worker cap (assembly is vectorized "
                   "in-process; accepted for interface compatibility)")
    p.add_argument("--out", default=None, help="output directory (default: cwd)")
    p.add_argument("--output-every", dest="output_every", type=int)
    p.add_argument("--init", choices=("l2", "gaussradau"))
    p.add_argument("--config", help="key=value config file; flags take precedence")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="vvb", description="DG/LDG solver for the Vlasov-viscous Burgers system"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="advance one scenario and write diagnostics")
    _add_common(run_p)

    conv_p = sub.add_parser("converge", help="refinement study against exact solutions")
    _add_common(conv_p)
    conv_p.add_argument("--meshes", help="comma list of N values, e.g. 8,16,32,64")
    conv_p.add_argument(
        "--eps-list", help="comma list of viscosities (one rate table per value)"
    )
    conv_p.add_argument(
        "--lambda-list", dest="lam_list", help="comma list of lambda weights"
    )

    proj_p = sub.add_parser("project", help="projection-order refinement study")
    _add_common(proj_p)
    proj_p.add_argument("--k", help="comma list of degrees (default 1,2)")
    proj_p.add_argument("--meshes", help="comma list of N values")
    return parser


def _outdir(args):
    out = args.out or "."
    os.makedirs(out, exist_ok=True)
    return out


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def cmd_run(args) -> int:
    if args.scenario is None:
        print("error: --scenario is required", file=sys.stderr)
        return 2
    if args.threads is not None and args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    scn = scenario(args.scenario, eps=args.eps)
    out = _outdir(args)
    diag_path = os.path.join(out, "diagnostics.csv")
    rows = []

    def callback(step, state, dt, rec):
        rows.append(rec)

    state, steps, history = simulate(
        scn,
        t_final=args.tfinal,
        cfl=args.cfl,
        callback=callback,
        output_every=args.output_every or 1,
        kx=args.kx,
        kv=args.kv,
        nx=args.nx,
        nv=args.nv,
        lam=args.lam,
        lam1=args.lam1,
        lam2=args.lam2,
        init=args.init or "l2",
    )
    with open(diag_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADERS)
        for rec in rows:
            writer.writerow(
                [_fmt(rec[k]) for k in ("t", "mass", "momentum", "energy", "l2f", "l2u")]
            )

    summary = {
        "scenario": scn.id,
        "kx": args.kx if args.kx is not None else scn.kx,
        "kv": args.kv if args.kv is not None else scn.kv,
        "nx": args.nx if args.nx is not None else scn.nx,
        "nv": args.nv if args.nv is not None else scn.nv,
        "eps": scn.eps,
        "lambda": args.lam if args.lam is not None else scn.lam,
        "lambda1": args.lam1 if args.lam1 is not None else scn.lam1,
        "lambda2": args.lam2 if args.lam2 is not None else scn.lam2,
        "tfinal": state.t,
        "steps": steps,
        "mass0": history[0]["mass"],
        "massT": history[-1]["mass"],
        "momentum0": history[0]["momentum"],
        "momentumT": history[-1]["momentum"],
        "energy0": history[0]["energy"],
        "energyT": history[-1]["energy"],
    }
    if scn.f_exact is not None:
        err = error_pair(state, scn)
        summary["L2f"] = err["L2f"]
        summary["L2u"] = err["L2u"]
        print(f"final L2f = {err['L2f']:.6e}  L2u = {err['L2u']:.6e}")
    drift = abs(summary["massT"] - summary["mass0"]) / max(abs(summary["mass0"]), 1e-300)
    print(f"steps = {steps}  relative mass drift = {drift:.3e}")
    with open(os.path.join(out, "summary.csv"), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(summary.keys())
        writer.writerow([_fmt(v) for v in summary.values()])
    return 0


def _parse_list(text, cast):
    return [cast(tok) for tok in text.split(",") if tok.strip()]


def cmd_converge(args) -> int:
    if args.scenario is None:
        print("error: --scenario is required", file=sys.stderr)
        return 2
    meshes = _parse_list(args.meshes or "8,16,32", int)
    if len(meshes) < 3:
        print("error: converge needs at least 3 mesh levels", file=sys.stderr)
        return 2
    eps_values = _parse_list(args.eps_list, float) if args.eps_list else [args.eps]
    lam_values = _parse_list(args.lam_list, float) if args.lam_list else [args.lam]
    out = _outdir(args)
    multi = len(eps_values) * len(lam_values) > 1
    for eps in eps_values:
        for lam in lam_values:
            rows = convergence_study(
                args.scenario,
                meshes,
                kx=args.kx,
                kv=args.kv,
                eps=eps,
                lam=lam,
                lam1=args.lam1,
                lam2=args.lam2,
                t_final=args.tfinal,
                cfl=args.cfl,
                init=args.init or "l2",
            )
            if multi:
                eps_tag = eps if eps is not None else "default"
                lam_tag = lam if lam is not None else "default"
                name = f"rates_eps{eps_tag}_lam{lam_tag}.csv"
            else:
                name = "rates.csv"
            with open(os.path.join(out, name), "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["N", "h", "L2f", "rate_f", "L2u", "rate_u"])
                for row in rows:
                    writer.writerow([_fmt(x) for x in row])
            print(f"# {name}")
            print("N,h,L2f,rate_f,L2u,rate_u")
            for row in rows:
                print(",".join(_fmt(x) for x in row))
    return 0


def cmd_project(args) -> int:
    ks = _parse_list(args.k, int) if args.k else [1, 2]
    meshes = _parse_list(args.meshes, int) if args.meshes else [8, 16, 32, 64]
    lam = args.lam if args.lam is not None else 1.5
    lam1 = args.lam1 if args.lam1 is not None else 1.5
    lam2 = args.lam2 if args.lam2 is not None else 1.5
    out = _outdir(args)
    for tag, study in (("proj1d", "1d"), ("proj2d", "2d")):
        path = os.path.join(out, f"{tag}.csv")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "N", "h", "L2", "slope_L2", "trace", "slope_trace"])
            for k in ks:
                if study == "1d":
                    rows = projection_study_1d(k, lam, meshes)
                else:
                    rows = projection_study_2d(k, lam1, lam2, meshes)
                r_l2 = rates([(h, e) for _, h, e, _ in rows])
                r_tr = rates([(h, e) for _, h, _, e in rows])
                for idx, (n, h, e_l2, e_tr) in enumerate(rows):
                    writer.writerow(
                        [
                            k,
                            n,
                            _fmt(h),
                            _fmt(e_l2),
                            _fmt(None if idx == 0 else r_l2[idx - 1]),
                            _fmt(e_tr),
                            _fmt(None if idx == 0 else r_tr[idx - 1]),
                        ]
                    )
                final_l2 = r_l2[-1]
                final_tr = r_tr[-1]
                print(
                    f"{tag} k={k}: final L2 slope = {final_l2:.3f}, "
                    f"trace slope = {final_tr:.3f}"
                )
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args = _merge_config(args)
        if args.command == "run":
            return cmd_run(args)
        if args.command == "converge":
            return cmd_converge(args)
        return cmd_project(args)
    except InvalidArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailureError as exc:
        ctx = f" ({exc.context})" if exc.context else ""
        print(f"numerical failure: {exc}{ctx}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
