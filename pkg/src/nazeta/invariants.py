"""The invariants alpha, beta, gamma of semistable bundle masses.

For fixed rank r, genus g and field size q:

* beta(d)  = sum 1/#Aut(V) over semistable V of degree d,
* alpha(d) = sum q^h0(V)/#Aut(V),
* gamma(d) = alpha(d) - beta(d).

Only the aggregated masses are handled here; bundles themselves never appear.
beta lives on residues mod r, alpha on 0..r(2g-2), and everything else follows
from periodicity and Riemann-Roch duality.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .artin import ArtinZeta, class_number, zeta_value
from .exact import as_rat


class InvariantError(ValueError):
    """A table violates one of the alpha/beta/gamma relations."""


@dataclass(frozen=True)
class InvariantTable:
    r: int
    q: int
    g: int
    alpha: tuple[Fraction, ...]  # alpha(0), ..., alpha(top) (partial tables stop at r(g-1))
    beta: tuple[Fraction, ...]  # beta(0), ..., beta(r-1)

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(as_rat(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(as_rat(b) for b in self.beta))
        if self.r < 1:
            raise InvariantError("rank must be >= 1")
        if len(self.beta) != self.r:
            raise InvariantError(f"beta needs {self.r} residues, got {len(self.beta)}")
        if len(self.alpha) not in (self.mid + 1, self.top + 1):
            raise InvariantError(f"alpha must cover 0..{self.mid} or 0..{self.top}, got {len(self.alpha)} values")

    @property
    def top(self) -> int:
        """r(2g-2): the last degree with a finite-part coefficient."""
        return self.r * (2 * self.g - 2)

    @property
    def mid(self) -> int:
        return self.r * (self.g - 1)

    @property
    def complete(self) -> bool:
        return len(self.alpha) == self.top + 1

    def beta_at(self, d: int) -> Fraction:
        return self.beta[d % self.r]

    def alpha_at(self, d: int) -> Fraction:
        if d < 0:
            return self.beta_at(d)
        if d > self.top:
            return self.beta_at(d) * Fraction(self.q) ** (d - self.mid)
        return self.alpha[d]

    def gamma_at(self, d: int) -> Fraction:
        return self.alpha_at(d) - self.beta_at(d)

    @property
    def gamma(self) -> tuple[Fraction, ...]:
        return tuple(self.gamma_at(d) for d in range(len(self.alpha)))

    def violations(self) -> list[str]:
        out = []
        r, q = self.r, self.q
        for i in range(r):
            j = (r - i) % r
            if self.beta[i] != self.beta[j]:
                out.append(f"beta({i}) = {self.beta[i]} != beta({j}) = {self.beta[j]} (beta(-d) = beta(d))")
        if self.complete:
            for d in range(self.top + 1):
                want = self.alpha[self.top - d] * Fraction(q) ** (d - self.mid)
                if self.alpha[d] != want:
                    out.append(f"alpha({d}) = {self.alpha[d]} != alpha({self.top - d}) q^({d - self.mid}) = {want}")
        for d, a in enumerate(self.alpha):
            if a < 0:
                out.append(f"alpha({d}) = {a} < 0")
            if self.gamma_at(d) < 0:
                out.append(f"gamma({d}) = {self.gamma_at(d)} < 0")
        for i, b in enumerate(self.beta):
            if b < 0:
                out.append(f"beta({i}) = {b} < 0")
        if self.gamma_at(0) <= 0:
            out.append(f"gamma(0) = {self.gamma_at(0)} is not positive")
        return out

    def validate(self) -> "InvariantTable":
        bad = self.violations()
        if bad:
            raise InvariantError("; ".join(bad))
        return self

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "alpha", "beta", "gamma"])
        for d in range(len(self.alpha)):
            w.writerow([d, frac_str(self.alpha_at(d)), frac_str(self.beta_at(d)), frac_str(self.gamma_at(d))])
        return buf.getvalue()


def frac_str(x: Fraction) -> str:
    x = as_rat(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den or 1))


def table_from_csv(text: str, r: int, q: int, g: int) -> InvariantTable:
    rows = list(csv.DictReader(io.StringIO(text)))
    alpha = [parse_frac(row["alpha"]) for row in rows]
    beta = [parse_frac(rows[i]["beta"]) for i in range(r)]
    return InvariantTable(r, q, g, tuple(alpha), tuple(beta))


def extend_table(partial: InvariantTable) -> InvariantTable:
    """Fill alpha on r(g-1)+1..r(2g-2) from alpha(d) = alpha(r(2g-2)-d) q^(d-r(g-1))
    and validate the result."""
    if partial.complete:
        return partial.validate()
    alpha = list(partial.alpha)
    for d in range(partial.mid + 1, partial.top + 1):
        alpha.append(alpha[partial.top - d] * Fraction(partial.q) ** (d - partial.mid))
    return InvariantTable(partial.r, partial.q, partial.g, tuple(alpha), partial.beta).validate()


def table_from_gamma(r: int, q: int, g: int, gamma_low: Sequence, beta: Sequence) -> InvariantTable:
    """Partial table from gamma(0..r(g-1)) and beta residues, extended."""
    beta = tuple(as_rat(b) for b in beta)
    alpha = tuple(as_rat(c) + beta[d % r] for d, c in enumerate(gamma_low))
    return extend_table(InvariantTable(r, q, g, alpha, beta))


def rank1_table(z: ArtinZeta) -> InvariantTable:
    """Rank-1 table of a curve: gamma(d) is the number of effective divisors of
    degree d (coefficient of Z_C(t)), beta = h/(q-1)."""
    Z = z.series(2 * z.g - 2)
    beta = beta_rank1(z)
    return table_from_gamma(1, z.q, z.g, Z.coeffs[: z.g], (beta,))


# --- closed forms ------------------------------------------------------------


def siegel_mass(r: int, z: ArtinZeta) -> Fraction:
    """sum 1/#Aut(V) over rank-r bundles with a fixed determinant:
    q^((r^2-1)(g-1))/(q-1) * zeta_C(2) ... zeta_C(r)."""
    if r < 1:
        raise ValueError("rank must be >= 1")
    out = Fraction(z.q) ** ((r * r - 1) * (z.g - 1)) / (z.q - 1)
    for n in range(2, r + 1):
        out *= zeta_value(z, n)
    return out


def beta_rank1(z: ArtinZeta) -> Fraction:
    return class_number(z) / (z.q - 1)


BETA2_VARIANTS = ("dr", "lemma311", "hn")


def _unstable_geometric(q: int, d: int) -> Fraction:
    """sum_{d1 > d2, d1 + d2 = d} q^-(d1 - d2) = q^(d mod 2) / (q^2 - 1)."""
    return Fraction(q ** (d % 2), q * q - 1)


def beta2_per_determinant(z: ArtinZeta, d: int, variant: str = "hn") -> Fraction:
    """beta_{C,2}(L) for deg L = d, genus 2.

    ``dr`` is the recursion with the unstable stratum scaled by q h,
        q^3/(q-1) zeta(2) - q h sum beta_1(d1) beta_1(d2) q^-(d1-d2);
    ``lemma311`` is the closed form for beta(d) over all of Pic^d, divided by h;
    ``hn`` is the Harder-Narasimhan recursion with a fixed determinant, where
    the unstable stratum contributes (q/h) sum beta_1(d1) beta_1(d2) q^-(d1-d2).
    """
    _check_genus2(z)
    q, h = z.q, class_number(z)
    b1 = beta_rank1(z)
    mass = siegel_mass(2, z)
    if variant == "dr":
        return mass - q * h * b1 * b1 * _unstable_geometric(q, d)
    if variant == "lemma311":
        return beta2_lemma311(z, d) / h
    if variant == "hn":
        return mass - Fraction(q) / h * b1 * b1 * _unstable_geometric(q, d)
    raise ValueError(f"unknown beta_2 variant {variant!r}; expected one of {BETA2_VARIANTS}")


def beta_rank2_dr(z: ArtinZeta, d: int, variant: str = "dr") -> Fraction:
    """beta_{C,2}(d) = h * beta_{C,2}(L): the per-determinant value times #Pic^d."""
    if d % 2 not in (0, 1):
        raise ValueError("d must be 0 or 1 mod 2")
    return class_number(z) * beta2_per_determinant(z, d % 2, variant)


def beta2_lemma311(z: ArtinZeta, d: int) -> Fraction:
    """q^3/(q-1) zeta(2) h - q^(d+1)/((q-1)^2 (q^2-1)) h^4."""
    _check_genus2(z)
    q, h = z.q, class_number(z)
    d %= 2
    return Fraction(q**3, q - 1) * zeta_value(z, 2) * h - Fraction(q ** (d + 1), (q - 1) ** 2 * (q * q - 1)) * h**4


def moduli_point_count_odd(z: ArtinZeta) -> Fraction:
    """#M_{C,2}(L)(F_q) for deg L odd on a genus-2 curve: q^3+q^2+q+1 - q p_1.

    The odd-degree moduli space is smooth with cohomology 1, 1, H^1(C)(-1),
    1, 1 in degrees 0, 2, 3, 4, 6, so the Lefschetz trace formula gives this
    count; every point is a stable bundle with automorphisms F_q^*.
    """
    _check_genus2(z)
    q = z.q
    p1 = z.power_sums(1)[0]
    return q**3 + q**2 + q + 1 - q * p1


def _check_genus2(z: ArtinZeta) -> None:
    if z.g != 2:
        raise ValueError(f"rank-2 closed forms are implemented for genus 2 only, got g = {z.g}")


# --- inequality checks -------------------------------------------------------


@dataclass
class CliffordReport:
    ok: bool
    failures: list[tuple[int, Fraction, Fraction]]

    def as_dict(self):
        return {
            "check": "clifford",
            "pass": self.ok,
            "failures": [{"d": d, "alpha": frac_str(a), "bound": frac_str(b)} for d, a, b in self.failures],
        }


def clifford_check(t: InvariantTable) -> CliffordReport:
    """alpha(d) <= q^(ceil(d/2) + r) beta(d) for 0 <= d <= r(2g-2)."""
    fails = []
    for d in range(t.top + 1):
        bound = Fraction(t.q) ** (-(-d // 2) + t.r) * t.beta_at(d)
        if t.alpha_at(d) > bound:
            fails.append((d, t.alpha_at(d), bound))
    return CliffordReport(not fails, fails)


def mass_bound_check(z: ArtinZeta, variant: str = "hn") -> dict:
    """0 < beta_2(L) <= q^3/(q-1) zeta_C(2) for d = 0, 1 (exact)."""
    mass = siegel_mass(2, z)
    rows = []
    for d in (0, 1):
        b = beta2_per_determinant(z, d, variant)
        rows.append({"d": d, "beta_L": frac_str(b), "ok": 0 < b <= mass})
    return {"check": "mass_bound", "variant": variant, "mass": frac_str(mass), "rows": rows, "pass": all(r["ok"] for r in rows)}
