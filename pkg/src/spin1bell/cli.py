"""Command-line entry point: ``spin1bell {ground,bell,lrbound,sweep,table1,scaling}``."""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

import numpy as np

from . import sweep as sw
from .bell import BellWeights, bell_value, correlators
from .diagnostics import entanglement_entropy
from .eigensolver import ground_state
from .hamiltonian import HamiltonianParams, build_hamiltonian
from .hilbert import enumerate_sector
from .lrbound import alternating_pattern, lr_bound_bruteforce, lr_bound_dp


def _even_N(text):
    N = int(text)
    if N % 2:
        raise argparse.ArgumentTypeError(sw.ODD_N_MESSAGE)
    return N


def _print_json(obj):
    print(json.dumps(obj, indent=2, default=float))


def cmd_ground(args):
    basis = enumerate_sector(args.N, 0)
    gs = ground_state(build_hamiltonian(HamiltonianParams(args.Jz, args.D, args.N), basis),
                      tol=args.tol, seed=args.seed)
    _print_json({"N": args.N, "Jz": args.Jz, "D": args.D, "dim": basis.dim, "energy": gs.energy,
                 "gap": gs.gap, "degenerate": gs.degenerate, "residual": gs.residual,
                 "matvecs": gs.iterations, "entropy": entanglement_entropy(gs)})


def _cfg(args, **extra):
    kw = dict(theta1=args.theta1, theta2=args.theta2, theta_nu=args.theta_nu, tol=args.tol, seed=args.seed)
    kw.update(extra)
    if getattr(args, "config", None):
        return sw.SweepConfig.from_file(args.config, **kw)
    return sw.SweepConfig(**{k: v for k, v in kw.items() if v is not None})


def cmd_bell(args):
    cfg = _cfg(args, Ns=(args.N,))
    rec = sw.evaluate_point(args.N, args.Jz, args.D, cfg)
    out = {k: getattr(rec, k) for k in sw.COLUMNS}
    if args.f is not None:
        basis = enumerate_sector(args.N, 0)
        gs = ground_state(build_hamiltonian(HamiltonianParams(args.Jz, args.D, args.N), basis),
                          tol=cfg.tol, seed=cfg.seed)
        w = BellWeights.maximizing(args.N, args.f, theta1=args.theta1, theta2=args.theta2, theta_nu=args.theta_nu)
        g = correlators(gs)
        out["fixed_f"] = {"f": args.f, "bell": bell_value(g, w, args.N), "beta_lr": lr_bound_dp(args.N, w)}
        out["fixed_f"]["ratio"] = out["fixed_f"]["bell"] / out["fixed_f"]["beta_lr"]
    _print_json(out)


def cmd_lrbound(args):
    c = tuple(args.c) if args.c else alternating_pattern(args.N)
    w = BellWeights(f1_mag=args.f1, f2_mag=args.f2, theta1=args.theta1, theta2=args.theta2, theta_nu=0.0, c=c)
    out = {"N": args.N, "c": list(c), "beta_lr": lr_bound_dp(args.N, w)}
    if args.bruteforce:
        out["beta_lr_bruteforce"] = lr_bound_bruteforce(args.N, w)
    _print_json(out)


def cmd_sweep(args):
    over = dict(Ns=tuple(args.N) if args.N else None, Jz_min=args.Jz[0] if args.Jz else None,
                Jz_max=args.Jz[1] if args.Jz else None, Jz_steps=int(args.Jz[2]) if args.Jz else None,
                D_min=args.D[0] if args.D else None, D_max=args.D[1] if args.D else None,
                D_steps=int(args.D[2]) if args.D else None, workers=args.workers,
                output=args.output, format=args.format, f_max=args.f_max, f_points=args.f_points)
    cfg = _cfg(args, **{k: v for k, v in over.items() if v is not None})
    records = sw.run_sweep(cfg)
    if cfg.output:
        for path in sw.emit(records, cfg.output, cfg.format):
            logging.info("wrote %s", path)
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(sw.COLUMNS)
        for r in records:
            writer.writerow([sw._fmt(getattr(r, c)) for c in sw.COLUMNS])


def cmd_table1(args):
    cfg = _cfg(args)
    rows = sw.table1_rows(Jz=args.Jz, Ns=tuple(args.N), cfg=cfg)
    for row in rows:
        logging.info("N=%d: D*=%.6f, ground-state ratio %.6f", row["N"], row["D_star"], row["ground_state_ratio"])
    fh = open(args.output, "w", newline="") if args.output else sys.stdout
    writer = csv.writer(fh)
    writer.writerow(sw.TABLE1_COLUMNS)
    for row in rows:
        writer.writerow([row["N"], f"{row['f_v_max']:.4f}", f"{row['b']:.4f}", f"{row['ratio']:.3f}"])
    if args.output:
        fh.close()


def cmd_scaling(args):
    cfg = _cfg(args)
    fit, points = sw.scaling_fit(args.Jz, tuple(args.N), cfg)
    _print_json({"Jz": args.Jz, "gamma": fit.gamma, "log_prefactor": fit.log_prefactor,
                 "residual": fit.residual,
                 "points": [{"N": N, "D_star": p.D, "ratio": p.ratio} for N, p in zip(args.N, points)]})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spin1bell", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, angles=True):
        sp.add_argument("--tol", type=float, default=None, help="eigensolver residual tolerance")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--config", help="key = value config file; flags override it")
        if angles:
            sp.add_argument("--theta1", type=float, default=None)
            sp.add_argument("--theta2", type=float, default=None)
            sp.add_argument("--theta-nu", dest="theta_nu", type=float, default=None)

    g = sub.add_parser("ground", help="ground state at one point")
    g.add_argument("--N", type=_even_N, required=True)
    g.add_argument("--Jz", type=float, required=True)
    g.add_argument("--D", type=float, required=True)
    g.add_argument("--tol", type=float, default=1e-10)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_ground)

    b = sub.add_parser("bell", help="correlators and optimized ratio at one point")
    b.add_argument("--N", type=_even_N, required=True)
    b.add_argument("--Jz", type=float, required=True)
    b.add_argument("--D", type=float, required=True)
    b.add_argument("--f", type=float, default=None, help="also report the ratio at this |f2|/|f1|")
    common(b)
    b.set_defaults(func=cmd_bell)

    lb = sub.add_parser("lrbound", help="local-realistic bound for given weights")
    lb.add_argument("--N", type=int, required=True)
    lb.add_argument("--f1", type=float, default=1.0, help="|f1|")
    lb.add_argument("--f2", type=float, default=0.0, help="|f2|")
    lb.add_argument("--theta1", type=float, default=np.pi / 2)
    lb.add_argument("--theta2", type=float, default=np.pi)
    lb.add_argument("--c", type=int, nargs="+", help="conjugation pattern (default alternating)")
    lb.add_argument("--bruteforce", action="store_true", help="also enumerate all strategies (N <= 6)")
    lb.set_defaults(func=cmd_lrbound)

    s = sub.add_parser("sweep", help="grid over (N, Jz, D)")
    s.add_argument("--N", type=_even_N, nargs="+")
    s.add_argument("--Jz", type=float, nargs=3, metavar=("MIN", "MAX", "STEPS"))
    s.add_argument("--D", type=float, nargs=3, metavar=("MIN", "MAX", "STEPS"))
    s.add_argument("--f-max", dest="f_max", type=float)
    s.add_argument("--f-points", dest="f_points", type=int)
    s.add_argument("--workers", type=int)
    s.add_argument("-o", "--output")
    s.add_argument("--format", choices=["csv", "jsonl", "both"])
    common(s)
    s.set_defaults(func=cmd_sweep)

    t = sub.add_parser("table1", help="N, f_v_max, b, ratio at the located criticality")
    t.add_argument("--Jz", type=float, default=12.0)
    t.add_argument("--N", type=_even_N, nargs="+", default=[4, 6, 8, 10])
    t.add_argument("-o", "--output")
    common(t)
    t.set_defaults(func=cmd_table1)

    sc = sub.add_parser("scaling", help="fit ratio ~ gamma^N at criticality")
    sc.add_argument("--Jz", type=float, default=12.0)
    sc.add_argument("--N", type=_even_N, nargs="+", default=[4, 6, 8, 10])
    common(sc)
    sc.set_defaults(func=cmd_scaling)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    args.func(args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
