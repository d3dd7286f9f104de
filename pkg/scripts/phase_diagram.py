#!/usr/bin/env python3
"""Phase diagram of the rate plane at fixed emergence rate.

Sweeps a beta x mu grid, simulates each admissible cell, and prints an
ASCII phase plane: S where the orbit survives, E where it dies out,
'=' on cells the validator rejects (equal rates), '!' where simulation
and spectral classification disagree (should never happen).  The full
grid also lands in a CSV.

    python3 scripts/phase_diagram.py --alpha 0.6 --n 21 --out out/phase.csv
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from mosqdyn import (
    Classification,
    Mode,
    OrbitConfig,
    Parameters,
    State,
    classify_origin,
    iterate_orbit,
    validate_parameters,
)
from mosqdyn.ioutil import atomic_write_lines, fmt


def cell_symbol(p, s0, cfg, tol):
    rep = validate_parameters(p, Mode.REDUCED)
    if not rep.valid:
        return "=", None
    cls = classify_origin(p, tol=tol).classification
    orb = iterate_orbit(p, s0, cfg)
    verdict = orb.verdict.value
    if p.beta < p.mu:
        agree = cls is Classification.ATTRACTING and verdict == "extinction"
        sym = "E"
    else:
        agree = cls is not Classification.ATTRACTING and verdict == "survival"
        sym = "S"
    return (sym if agree else "!"), (cls.value, verdict, orb.n_steps, orb.y_limit_estimate)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--alpha", type=float, default=0.6)
    ap.add_argument("--beta-lo", type=float, default=0.05)
    ap.add_argument("--beta-hi", type=float, default=1.0)
    ap.add_argument("--mu-lo", type=float, default=0.05)
    ap.add_argument("--mu-hi", type=float, default=1.0)
    ap.add_argument("--n", type=int, default=21, help="grid points per axis")
    ap.add_argument("--x0", type=float, default=1.0)
    ap.add_argument("--y0", type=float, default=1.0)
    ap.add_argument("--steps", type=int, default=1_000_000)
    ap.add_argument("--tol", type=float, default=1e-9)
    ap.add_argument("--out", type=Path, default=Path("out/phase.csv"))
    args = ap.parse_args(argv)

    betas = np.linspace(args.beta_lo, args.beta_hi, args.n)
    mus = np.linspace(args.mu_lo, args.mu_hi, args.n)
    cfg = OrbitConfig(max_iters=args.steps, record_every=64)
    s0 = State(args.x0, args.y0)

    rows = ["alpha,beta,mu,symbol,classification,verdict,n_steps,y_limit_estimate"]
    grid = []
    disagree = 0
    # mu along rows top-down so the printout reads like a plot
    for m in mus[::-1]:
        line = []
        for b in betas:
            p = Parameters(args.alpha, float(b), float(m))
            sym, detail = cell_symbol(p, s0, cfg, args.tol)
            line.append(sym)
            if sym == "!":
                disagree += 1
            if detail is None:
                rows.append(f"{fmt(args.alpha)},{fmt(b)},{fmt(m)},{sym},,,,")
            else:
                cls, verdict, n_steps, y_est = detail
                rows.append(
                    f"{fmt(args.alpha)},{fmt(b)},{fmt(m)},{sym},{cls},{verdict},"
                    f"{n_steps},{fmt(y_est)}"
                )
        grid.append("".join(line))

    print(f"alpha={args.alpha}  beta left {args.beta_lo} to {args.beta_hi} right, "
          f"mu bottom {args.mu_lo} to {args.mu_hi} top")
    for line in grid:
        print(line)
    print(f"cells={args.n * args.n} disagreements={disagree}")

    args.out.parent.mkdir(parents=True, exist_ok=True)
    atomic_write_lines(args.out, rows)
    print(f"wrote {args.out}")
    return 1 if disagree else 0


if __name__ == "__main__":
    sys.exit(main())
