#!/usr/bin/env python3
"""Empirical convergence of the theta-scheme solver on the CIR benchmark.

Runs a halving study against the closed form for theta=0.5 and theta=1.0.
Crank-Nicolson should show order about 2, implicit Euler about 1.
"""

import argparse

from bondtaylor.closedform import cir_exact_price
from bondtaylor.fdsolver import FDGrid, convergence_study
from bondtaylor.model import CIRParams, make_cir

PARAMS = CIRParams(alpha=0.00315, beta=-0.0555, sigma=0.0894)
R = 0.05


def run(tau: float, theta: float, levels: int) -> None:
    model = make_cir(PARAMS)
    # base grid keeps r=0.05 on a node at every halving level
    base = FDGrid(r_max=0.5, n_r=250, n_t=250, theta=theta)
    study = convergence_study(model, tau, R, base, levels)
    exact = cir_exact_price(PARAMS, tau, R)
    print(f"theta={theta} tau={tau} exact={exact:.10f}")
    print(f"  {'h':>10s} {'dtau':>10s} {'value':>14s} {'|err_rich|':>11s}")
    for row in study.rows:
        print(f"  {row.h:10.6f} {row.dtau:10.6f} {row.value:14.10f} "
              f"{row.error_vs_richardson:11.3e}")
    orders = ", ".join(f"{p:.3f}" for p in study.orders)
    finest = study.rows[-1].value
    print(f"  observed orders: {orders}")
    print(f"  |finest - exact| = {abs(finest - exact):.3e}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tau", type=float, default=1.0)
    ap.add_argument("--levels", type=int, default=4)
    args = ap.parse_args()
    for theta in (0.5, 1.0):
        run(args.tau, theta, args.levels)


if __name__ == "__main__":
    main()
