"""Partial Euler products at X = 100, 200, 400 for the rank-2 zeta of
y^2 = x^5 - x and for the elliptic zeta_2, with successive differences."""

import argparse

import mpmath

from nazeta.acceptance import fixture_curve
from nazeta.euler import GlobalZetaSpec, convergence_bound, elliptic_partial_product, partial_product

XS = (100, 200, 400, 800)


def report(label, trace):
    prev = None
    for X in XS:
        v = trace.running_at(X)
        diff = "" if prev is None else mpmath.nstr(abs(v - prev), 3)
        print(f"{label},{X},{mpmath.nstr(v, 30)},{diff}")
        prev = v


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--s-elliptic", type=float, nargs="+", default=[3.0, 4.0])
    args = ap.parse_args()
    print("series,X,partial_product,diff_from_previous")
    curve = fixture_curve()
    for r in (1, 2):
        s = convergence_bound(r, 2)
        report(f"rank{r}(s={s})", partial_product(GlobalZetaSpec(curve, r), s, max(XS)))
    for s in args.s_elliptic:
        report(f"elliptic(s={s})", elliptic_partial_product(s, max(XS)))
    # the elliptic factor is 1 - p^(1-s) + O(p^-s), so the tail beyond X is
    # about sum_{p > X} p^(1-s), roughly X^(2-s) / ((s-2) log X)
    for s in args.s_elliptic:
        est = 200 ** (2 - s) / ((s - 2) * mpmath.log(200))
        print(f"# elliptic s={s}: predicted tail beyond X=200 ~ {mpmath.nstr(est, 3)}")


if __name__ == "__main__":
    main()
