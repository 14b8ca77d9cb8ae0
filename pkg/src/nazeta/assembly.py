"""Rank-r zeta numerators assembled from an invariant table.

Z(t) = sum_{d=0}^{r(2g-2)} gamma(d) t^d
       + sum_{i=1}^{r} beta(i) (q^(r(g-1)+i)/(1-q^r t^r) - 1/(1-t^r)) t^(r(2g-2)+i)
     = P(t) / ((1 - t^r)(1 - q^r t^r)),   deg P = 2rg.
"""

from __future__ import annotations

import cmath
import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .exact import Poly, Series, as_rat, power_sums, reciprocal_roots, series_exp, series_log
from .invariants import InvariantTable, frac_str


class InconsistencyError(ValueError):
    """Assembled numerator fails rationality or the functional equation."""


def denominator(r: int, q: int) -> Poly:
    return (1 - Poly.monomial(r)) * (1 - Poly.monomial(r, q**r))


def fe_violation(P: Poly, r: int, q: int, g: int) -> str | None:
    """First failure of deg P = 2rg, P(0) != 0, a_{2rg-i} = q^(rg-i) a_i."""
    n = 2 * r * g
    if P[0] == 0:
        return "P(0) = 0"
    for i in range(r * g + 1):
        want = P[i] * Fraction(q) ** (r * g - i)
        if P[n - i] != want:
            return f"a_{n - i} = {P[n - i]} != a_{i} q^{r * g - i} = {want}"
    if P.degree != n:
        return f"deg P = {P.degree} != 2rg = {n}"
    return None


@dataclass(frozen=True)
class LocalZeta:
    r: int
    q: int
    g: int
    P: Poly

    def __post_init__(self):
        bad = fe_violation(self.P, self.r, self.q, self.g)
        if bad:
            raise InconsistencyError(f"rank-{self.r} numerator violates the functional equation: {bad}")

    @property
    def degree(self) -> int:
        return 2 * self.r * self.g

    def series(self, order: int) -> Series:
        """Z(t) expanded from P / ((1 - t^r)(1 - q^r t^r))."""
        r, qr = self.r, self.q**self.r
        inv = [Fraction(0)] * (order + 1)
        for k in range(order // r + 1):
            inv[k * r] = Fraction(sum(qr**j for j in range(k + 1)))
        return Series.from_poly(self.P, order) * Series(tuple(inv), order)

    def xi(self, s: complex) -> complex:
        """xi(s) = Z(q^-s) q^(s r (g-1)) via the rational form."""
        t = cmath.exp(-s * cmath.log(self.q))
        val = _eval_complex(self.P, t)
        den = (1 - t**self.r) * (1 - self.q**self.r * t**self.r)
        return val / den * cmath.exp(s * self.r * (self.g - 1) * cmath.log(self.q))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "a_i"])
        for i in range(self.degree + 1):
            w.writerow([i, frac_str(self.P[i])])
        return buf.getvalue()


def _eval_complex(P: Poly, t: complex) -> complex:
    acc = 0j
    for c in reversed(P.coeffs):
        acc = acc * t + float(c)
    return acc


def tail_series(r: int, q: int, g: int, i: int, beta_i, order: int) -> Series:
    """beta_i * sum_{n >= 2g-2} (q^(nr+i-r(g-1)) - 1) t^(nr+i), truncated."""
    beta_i = as_rat(beta_i)
    coeffs = [Fraction(0)] * (order + 1)
    n = 2 * g - 2
    while n * r + i <= order:
        coeffs[n * r + i] = beta_i * (Fraction(q) ** (n * r + i - r * (g - 1)) - 1)
        n += 1
    return Series(tuple(coeffs), order)


def tail_closed_form(r: int, q: int, g: int, i: int, beta_i) -> tuple[Poly, Poly]:
    """beta_i (q^(r(g-1)+i)/(1-q^r t^r) - 1/(1-t^r)) t^(r(2g-2)+i) as (num, den)."""
    beta_i = as_rat(beta_i)
    if beta_i == 0:
        return Poly(), Poly.const(1)
    shift = Poly.monomial(r * (2 * g - 2) + i, beta_i)
    a = 1 - Poly.monomial(r)
    b = 1 - Poly.monomial(r, q**r)
    num = shift * (a.scale(Fraction(q) ** (r * (g - 1) + i)) - b)
    return num, a * b


def assemble(table: InvariantTable, order: int | None = None) -> LocalZeta:
    """P(t) = Z(t)(1 - t^r)(1 - q^r t^r) computed on the expanded series.

    The tail is summed term by term up to ``order`` (default 2rg + 4); the
    coefficients of degree 2rg+1..order must cancel exactly.
    """
    if not table.complete:
        raise InconsistencyError("table is partial; run extend_table first")
    table.validate()
    r, q, g = table.r, table.q, table.g
    n = 2 * r * g
    order = n + 4 if order is None else order
    if order < n:
        raise ValueError(f"order must be at least 2rg = {n}")
    Z = Series.of([table.gamma_at(d) for d in range(table.top + 1)], order)
    for i in range(1, r + 1):
        Z = Z + tail_series(r, q, g, i, table.beta_at(i), order)
    prod = Z * Series.from_poly(denominator(r, q), order)
    for k in range(n + 1, order + 1):
        if prod[k] != 0:
            raise InconsistencyError(f"coefficient t^{k} = {prod[k]} of Z(t)(1-t^r)(1-q^r t^r) does not cancel")
    return LocalZeta(r, q, g, Poly(prod.coeffs[: n + 1]))


def ugly_coefficients(table: InvariantTable) -> list[Fraction]:
    """a_0..a_rg from the six-case closed formula in alpha and beta (g >= 4)."""
    r, q, g = table.r, table.q, table.g
    if g < 4:
        raise ValueError(f"the six index ranges overlap for g = {g} < 4; use assemble instead")
    A, B = table.alpha_at, table.beta_at
    qr = Fraction(q) ** r
    out = []
    for i in range(r * g + 1):
        if i <= r - 1:
            a = A(i) - B(i)
        elif i <= 2 * r - 1:
            a = A(i) - (qr + 1) * A(i - r) + qr * B(i - r)
        elif i <= r * (g - 1) - 1:
            a = A(i) - (qr + 1) * A(i - r) + qr * A(i - 2 * r)
        elif i == r * (g - 1):
            a = -(qr + 1) * A(r * (g - 2)) + qr * A(r * (g - 3)) + A(r * (g - 1))
        elif i <= r * g - 1:
            a = A(i) - (qr + 1) * A(i - r) + A(i - 2 * r) * qr
        else:
            a = 2 * qr * A(r * (g - 2)) - (qr + 1) * A(r * (g - 1))
        out.append(a)
    return out


@dataclass(frozen=True)
class NmSeries:
    r: int
    q: int
    values: tuple[Fraction, ...]  # N(1), ..., N(B)

    def log_series(self, order: int) -> Series:
        return Series.of([0] + [v / m for m, v in enumerate(self.values[:order], start=1)], order)


def nm_series(z: LocalZeta, B: int) -> NmSeries:
    """N(m) = r(1+q^m) - p_m if r | m, else -p_m, with p_m the exact power sums
    of the reciprocal roots of P."""
    if B < 1:
        raise ValueError("B must be >= 1")
    sums = power_sums(z.P, B)
    vals = []
    for m, s in enumerate(sums, start=1):
        vals.append(z.r * (1 + Fraction(z.q) ** m) - s if m % z.r == 0 else -s)
    return NmSeries(z.r, z.q, tuple(vals))


def reconstruct_series(z: LocalZeta, nm: NmSeries, order: int) -> Series:
    """P(0) exp(sum N(m) t^m / m)."""
    return series_exp(nm.log_series(order)) * z.P[0]


# --- reports -----------------------------------------------------------------


def root_pairing(z: LocalZeta, tol: float = 1e-6) -> dict:
    """Match the 2rg reciprocal roots into pairs with w w' = q."""
    roots = list(reciprocal_roots(z.P, z.q).roots)
    roots.sort(key=abs)
    unmatched = list(range(len(roots)))
    pairs = []
    failures = []
    while unmatched:
        i = unmatched.pop(0)
        target = z.q / roots[i]
        j = min(unmatched, key=lambda k: abs(roots[k] - target), default=None)
        if j is None:
            failures.append(str(roots[i]))
            break
        err = abs(roots[i] * roots[j] - z.q)
        if err >= tol:
            failures.append(f"{roots[i]} * {roots[j]} = {roots[i] * roots[j]}")
        unmatched.remove(j)
        pairs.append((roots[i], roots[j], err))
    ok = not failures and len(pairs) == z.r * z.g
    return {
        "check": "root_pairing",
        "pass": ok,
        "pairs": [{"w": str(a), "w_dual": str(b), "product_error": e} for a, b, e in pairs],
        "failures": failures,
    }


def root_of_unity_product(z: LocalZeta, a: int, B: int) -> dict:
    """prod_{i=1}^a Z(zeta_a^i t) = P(0)^a exp(sum N(ma) T^m/m), T = t^a, to order B in T.

    Left side: log Z(t) from the expanded rational function; the product over
    a-th roots of unity keeps only exponents divisible by a, multiplied by a.
    Right side: N(ma) from the exact power sums.
    """
    if not (1 <= a <= 6 and 1 <= B <= 12):
        raise ValueError("need 1 <= a <= 6 and 1 <= B <= 12")
    order = a * B
    Z = z.series(order)
    P0 = z.P[0]
    logZ = series_log(Z * (1 / P0))
    filtered = Series.of([a * logZ[a * m] for m in range(B + 1)], B)
    lhs = series_exp(filtered) * P0**a
    nm = nm_series(z, order)
    rhs_log = Series.of([0] + [nm.values[m * a - 1] / m for m in range(1, B + 1)], B)
    rhs = series_exp(rhs_log) * P0**a
    first_bad = next((k for k in range(B + 1) if lhs[k] != rhs[k]), None)
    return {
        "check": "root_of_unity_product",
        "a": a,
        "order": B,
        "pass": first_bad is None,
        "first_mismatch": first_bad,
    }


def xi_symmetry(z: LocalZeta, points=(0.3 + 0.7j, 0.7 - 0.7j), tol: float = 1e-9) -> dict:
    rows = []
    for s in points:
        a, b = z.xi(s), z.xi(1 - s)
        rel = abs(a - b) / max(abs(a), abs(b), 1e-300)
        rows.append({"s": str(s), "xi(s)": str(a), "xi(1-s)": str(b), "rel_err": rel, "ok": rel < tol})
    return {"check": "xi_symmetry", "pass": all(r["ok"] for r in rows), "rows": rows}
