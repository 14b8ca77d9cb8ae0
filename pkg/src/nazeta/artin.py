"""Rank-1 (Artin) zeta functions of curves over finite fields."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .curves import PointCounts
from .exact import Poly, Series, power_sums, reciprocal_roots, series_exp


class InconsistentCountsError(ValueError):
    pass


@dataclass(frozen=True)
class ArtinZeta:
    q: int
    g: int
    numerator: Poly
    completed_by_fe: bool = field(default=False, compare=False)

    def __post_init__(self):
        P, q, g = self.numerator, self.q, self.g
        if P.degree != 2 * g or P[0] != 1 or not P.is_integral():
            raise InconsistentCountsError(f"numerator {P} is not an integral degree-{2 * g} polynomial with P(0) = 1")
        for i in range(g + 1):
            if P[2 * g - i] != q ** (g - i) * P[i]:
                raise InconsistentCountsError(
                    f"functional equation a_{2 * g - i} = q^{g - i} a_{i} fails: {P[2 * g - i]} != {q ** (g - i) * P[i]}"
                )
        if P(1) <= 0:
            raise InconsistentCountsError(f"P(1) = {P(1)} is not positive")

    def power_sums(self, count: int) -> list[Fraction]:
        return power_sums(self.numerator, count)

    def counts(self, count: int) -> list[Fraction]:
        """N_m = 1 + q^m - sum w_i^m, exactly."""
        return [1 + self.q**m - s for m, s in enumerate(self.power_sums(count), start=1)]

    def series(self, order: int) -> Series:
        """Z(t) = P(t) / ((1 - t)(1 - q t)) expanded to the given order."""
        geo = [sum(self.q**k for k in range(n + 1)) for n in range(order + 1)]
        return Series.from_poly(self.numerator, order) * Series.of(geo, order)


def zeta_from_counts(counts: PointCounts) -> ArtinZeta:
    """Numerator of Z_C(t) = exp(sum N_m t^m / m) from point counts.

    With at least 2g counts the numerator is read off exp(...)(1-t)(1-qt) and
    must terminate at degree 2g; with g <= B < 2g counts the coefficients
    a_0..a_B come from the series and the rest from the functional equation.
    Any counts beyond what is needed are checked against the result.
    """
    q, g, N = counts.q, counts.g, counts.counts
    B = len(N)
    if B < g:
        raise InconsistentCountsError(f"need at least g = {g} counts, got {B}")
    log_series = Series.of([0] + [Fraction(n, m) for m, n in enumerate(N, start=1)], B)
    Z = series_exp(log_series)
    numer = Z * Series.of([1, -(q + 1), q], B)
    if B >= 2 * g:
        for k in range(2 * g + 1, B + 1):
            if numer[k] != 0:
                raise InconsistentCountsError(f"coefficient t^{k} of exp(...)(1-t)(1-qt) is {numer[k]}, expected 0")
        P = Poly(numer.coeffs[: 2 * g + 1])
        completed = False
    else:
        low = list(numer.coeffs[: g + 1])
        coeffs = low + [q ** (g - i) * low[i] for i in range(g - 1, -1, -1)]
        for k in range(g + 1, B + 1):
            if numer[k] != coeffs[k]:
                raise InconsistentCountsError(f"count N_{k} disagrees with the functional equation")
        P = Poly(coeffs)
        completed = True
    return ArtinZeta(q, g, P, completed)


def class_number(z: ArtinZeta) -> Fraction:
    """#Pic^0(C)(F_q) = P(1) = prod (1 - w_i)."""
    return z.numerator(Fraction(1))


def zeta_value(z: ArtinZeta, n: int) -> Fraction:
    """zeta_C(n) = P(q^-n) / ((1 - q^-n)(1 - q^(1-n))), for n >= 2."""
    if n <= 1:
        raise ValueError(f"zeta_C(s) has a pole at s = 1; need n >= 2, got {n}")
    t = Fraction(1, z.q**n)
    return z.numerator(t) / ((1 - t) * (1 - z.q * t))


@dataclass
class WeilReport:
    q: int
    moduli: list[float]
    offenders: list[complex]
    power_sum_bounds_ok: bool
    tol: float

    @property
    def ok(self) -> bool:
        return not self.offenders and self.power_sum_bounds_ok

    def as_dict(self) -> dict:
        return {
            "check": "weil",
            "q": self.q,
            "pass": self.ok,
            "moduli": self.moduli,
            "expected_modulus": math.sqrt(self.q),
            "offenders": [str(w) for w in self.offenders],
            "exact_power_sum_bounds": self.power_sum_bounds_ok,
        }


def weil_check(z: ArtinZeta, tol: float = 1e-6) -> WeilReport:
    """| |w_i| - sqrt(q) | < tol for every reciprocal root, plus the exact
    consequence p_m^2 <= (2g)^2 q^m of |w_i| = sqrt(q) for m = 1..2g."""
    if z.g == 0:
        return WeilReport(z.q, [], [], True, tol)
    roots = reciprocal_roots(z.numerator, z.q).roots
    root_q = math.sqrt(z.q)
    offenders = [w for w in roots if abs(abs(w) - root_q) >= tol]
    sums = z.power_sums(2 * z.g)
    exact_ok = all(s * s <= (2 * z.g) ** 2 * z.q**m for m, s in enumerate(sums, start=1))
    return WeilReport(z.q, sorted(abs(w) for w in roots), offenders, exact_ok, tol)
