#!/usr/bin/env python3
"""Scan the smoothing parameter for an i.i.d. box family and print the
risk-free / gambling work figures per epsilon, flagging points that land on
a target (min, max) eV pair.

Example:
    python scripts/epsilon_scan.py --lo 1e-6 --hi 1e-3 --points 16
"""
import argparse

import numpy as np

from szilard import bernoulli_product, gambler_work_bound, riskfree_work, work_unit


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, default=0.7, help="left probability per box")
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--temperature-kelvin", type=float, default=300.0)
    ap.add_argument("--lo", type=float, default=5e-5)
    ap.add_argument("--hi", type=float, default=1e-3)
    ap.add_argument("--points", type=int, default=10)
    ap.add_argument("--target-min-ev", type=float, default=1.0)
    ap.add_argument("--target-max-ev", type=float, default=3.5)
    ap.add_argument("--tolerance", type=float, default=0.1, help="relative window")
    args = ap.parse_args()

    c = work_unit(args.temperature_kelvin)
    dist = bernoulli_product(args.p, args.n)
    print(
        f"# bernoulli({args.p})^{args.n} at T={args.temperature_kelvin} K, "
        f"c = {c.ev:.6g} eV per box"
    )
    print(f"{'epsilon':>12}  {'riskfree eV':>12}  {'gambling eV':>12}  match")
    for eps in np.geomspace(args.lo, args.hi, args.points):
        lo = riskfree_work(dist, float(eps), c.joules).ev
        hi = gambler_work_bound(dist, float(eps), c.joules).ev
        hit = (
            abs(lo - args.target_min_ev) <= args.tolerance * args.target_min_ev
            and abs(hi - args.target_max_ev) <= args.tolerance * args.target_max_ev
        )
        print(f"{eps:12.4e}  {lo:12.4f}  {hi:12.4f}  {'<-- pair' if hit else ''}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
