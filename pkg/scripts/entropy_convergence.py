#!/usr/bin/env python3
"""Show the three entropy rates of an i.i.d. box family converging as n grows.

The smooth min and max entropy rates close in on the Shannon rate from
below and above; the raw (unsmoothed) min/max rates do not move at all.

Example:
    python scripts/entropy_convergence.py --p 0.7 --epsilon 1e-3
"""
import argparse

from szilard import bernoulli_product, binary_entropy, smooth_report


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, default=0.7)
    ap.add_argument("--epsilon", type=float, default=1e-3)
    ap.add_argument("--n-list", default="100,200,400,800,1600,3200")
    args = ap.parse_args()

    ns = [int(x) for x in args.n_list.split(",") if x.strip()]
    h = binary_entropy(args.p)
    print(f"# p = {args.p}, epsilon = {args.epsilon}, Shannon rate h = {h:.6f}")
    print(f"{'n':>6}  {'h_min^e/n':>10}  {'H_S/n':>10}  {'h_max^e/n':>10}  {'gap':>8}")
    for n in ns:
        r = smooth_report(bernoulli_product(args.p, n), args.epsilon)
        lo, hi = r.h_min_smooth / n, r.h_max_smooth / n
        print(f"{n:6d}  {lo:10.6f}  {r.shannon / n:10.6f}  {hi:10.6f}  {hi - lo:8.5f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
