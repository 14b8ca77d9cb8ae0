"""Rank-2 numerators of y^2 = x^5 - x (and a second curve) for every
(beta variant, weighting) pair, over the first few good primes."""

import argparse

from nazeta.artin import zeta_from_counts
from nazeta.curves import CurveModel, bad_primes, point_counts
from nazeta.genus2 import WEIGHTINGS, evaluate_combination
from nazeta.invariants import BETA2_VARIANTS, frac_str

CURVES = {"x5-x": (0, -1, 0, 0, 0, 1), "x5+x2+1": (1, 0, 1, 0, 0, 1)}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7, 11])
    args = ap.parse_args()
    print("curve,p,variant,weights,survives,mass_bound,P")
    for name, f in CURVES.items():
        curve = CurveModel(f, "Q", 2)
        for p in args.primes:
            if p in bad_primes(curve):
                continue
            z = zeta_from_counts(point_counts(curve, p, 2))
            for v in BETA2_VARIANTS:
                for w in WEIGHTINGS:
                    o = evaluate_combination(z, v, w)
                    P = " ".join(frac_str(c) for c in o.zeta.P.coeffs) if o.zeta else ""
                    print(f"{name},{p},{v},{w},{o.survives},{o.mass_bound_ok},{P}")


if __name__ == "__main__":
    main()
