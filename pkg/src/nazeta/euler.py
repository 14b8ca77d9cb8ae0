"""Global Euler products of normalized local numerators over good primes."""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import sympy

from .artin import zeta_from_counts
from .assembly import LocalZeta, assemble
from .curves import CurveModel, bad_primes, count_points, PointCounts
from .exact import Poly
from .genus2 import Genus2Inputs, build_zeta
from .invariants import rank1_table

DIGITS = 30
_WORKING_DPS = 50


def convergence_bound(r: int, g: int) -> int:
    """Abscissa 1 + g + (r^2 - r)(g - 1) from which the product converges."""
    return 1 + g + (r * r - r) * (g - 1)


def normalized_factor(z: LocalZeta | Poly) -> Poly:
    """P / P(0)."""
    P = z.P if isinstance(z, LocalZeta) else z
    if P[0] == 0:
        raise ZeroDivisionError("local numerator has zero constant term")
    return P.scale(1 / P[0])


def local_zeta(curve: CurveModel, p: int, r: int, variant: str = "hn", weights: str = "paper") -> LocalZeta:
    g = curve.genus
    counts = PointCounts(p, g, tuple(count_points(curve, p, m) for m in range(1, g + 1)))
    z = zeta_from_counts(counts)
    if r == 1:
        return assemble(rank1_table(z))
    if r == 2 and g == 2:
        return build_zeta(Genus2Inputs(z, variant, weights))[0]
    raise NotImplementedError(f"local factors are available for r = 1, or r = 2 with g = 2 (got r = {r}, g = {g})")


@dataclass
class GlobalZetaSpec:
    curve: CurveModel
    r: int
    variant: str = "hn"
    weights: str = "paper"
    bad: frozenset[int] = field(init=False)
    locals: dict[int, LocalZeta] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.curve.base != "Q":
            raise ValueError("global zeta functions need a curve over Q")
        self.bad = frozenset(bad_primes(self.curve))
        self._lock = threading.Lock()

    @property
    def bound(self) -> int:
        return convergence_bound(self.r, self.curve.genus)

    def good_primes(self, X: int) -> list[int]:
        return [p for p in sympy.primerange(2, X + 1) if p not in self.bad]

    def local(self, p: int) -> LocalZeta:
        with self._lock:
            hit = self.locals.get(p)
        if hit is not None:
            return hit
        z = local_zeta(self.curve, p, self.r, self.variant, self.weights)
        with self._lock:
            self.locals.setdefault(p, z)
        return z

    def prefetch(self, primes: list[int]) -> None:
        threads = int(os.environ.get("NAZETA_THREADS", "1") or 1)
        if threads <= 1:
            for p in primes:
                self.local(p)
            return
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(self.local, primes))


@dataclass
class Trace:
    rows: list[tuple[int, mpmath.mpf, mpmath.mpf]]

    @property
    def value(self) -> mpmath.mpf:
        return self.rows[-1][2] if self.rows else mpmath.mpf(1)

    def to_csv(self) -> str:
        lines = ["p,factor,running_product"]
        for p, f, run in self.rows:
            lines.append(f"{p},{mpmath.nstr(f, DIGITS, strip_zeros=False)},{mpmath.nstr(run, DIGITS, strip_zeros=False)}")
        return "\n".join(lines) + "\n"

    def running_at(self, X: int) -> mpmath.mpf:
        """Partial product over the traced primes p <= X."""
        val = mpmath.mpf(1)
        for p, _, run in self.rows:
            if p > X:
                break
            val = run
        return val


def _product(factors) -> Trace:
    rows = []
    run = mpmath.mpf(1)
    for p, poly, s in factors:
        t = mpmath.power(p, -s)
        val = mpmath.mpf(0)
        for c in reversed(poly.coeffs):
            val = val * t + mpmath.mpf(c.numerator) / c.denominator
        f = 1 / val
        run *= f
        rows.append((p, +f, +run))
    return Trace(rows)


def partial_product(spec: GlobalZetaSpec, s, X: int) -> Trace:
    """prod_{p good, p <= X} 1 / P~_p(p^-s), with the running trace."""
    with mpmath.workdps(_WORKING_DPS):
        s = mpmath.mpf(s)
        if s < spec.bound:
            raise ValueError(f"s = {s} is below the convergence bound 1 + g + (r^2 - r)(g - 1) = {spec.bound}")
        primes = spec.good_primes(X)
        spec.prefetch(primes)
        return _product((p, normalized_factor(spec.local(p)), s) for p in primes)


def hasse_weil_partial_product(curve: CurveModel, s, X: int) -> Trace:
    """Classical L-polynomial product for genus 2, written out directly:
    L_p(T) = 1 + c1 T + c2 T^2 + p c1 T^3 + p^2 T^4."""
    if curve.genus != 2:
        raise ValueError("direct Hasse-Weil reimplementation is written for genus 2")
    bad = bad_primes(curve)
    factors = []
    with mpmath.workdps(_WORKING_DPS):
        s = mpmath.mpf(s)
        for p in sympy.primerange(3, X + 1):
            if p in bad:
                continue
            N1, N2 = count_points(curve, p, 1), count_points(curve, p, 2)
            s1, s2 = p + 1 - N1, p * p + 1 - N2
            c1 = -s1
            c2 = Fraction(s1 * s1 - s2, 2)
            factors.append((p, Poly([1, c1, c2, p * c1, p * p]), s))
        return _product(factors)


# --- the elliptic rank-2 product ------------------------------------------------


@dataclass(frozen=True)
class EllipticFactor:
    p: int

    @property
    def a(self) -> Poly:
        p = self.p
        return Poly([1, p - 1, p - 2])

    @property
    def b(self) -> Poly:
        p = self.p
        return Poly([p - 2, p * p - p, p * p])

    @property
    def denominator(self) -> Poly:
        """1 + (p-1)t + (2p-4)t^2 + (p^2-p)t^3 + p^2 t^4."""
        p = self.p
        return Poly([1, p - 1, 2 * p - 4, p * p - p, p * p])


def elliptic_identities(p_max: int) -> dict:
    """Check a_p = (1+(p-2)t)(1+t), b_p = ((p-2)+pt)(1+pt), t^2 p^2 a_p(1/(pt)) = b_p
    and a_p + t^2 b_p = denominator, exactly, for odd primes p <= p_max."""
    if p_max < 3:
        raise ValueError("p_max must be >= 3")
    failures = []
    checked = 0
    for p in sympy.primerange(3, p_max + 1):
        e = EllipticFactor(p)
        a, b = e.a, e.b
        t2 = Poly.monomial(2)
        # t^2 p^2 a(1/(pt)) = p^2 t^2 + p(p-1) t + (p-2), read off coefficientwise
        dual = Poly([a[2 - i] * p**i for i in range(3)])
        checks = {
            "a_p factorization": (a, Poly([1, p - 2]) * Poly([1, 1])),
            "b_p factorization": (b, Poly([p - 2, p]) * Poly([1, p])),
            "a_p(1/(pt)) p^2 t^2 = b_p": (dual, b),
            "A_p + B_p p^-2s = denominator": (a + t2 * b, e.denominator),
        }
        for name, (lhs, rhs) in checks.items():
            if lhs != rhs:
                k = next(i for i in range(max(lhs.degree, rhs.degree) + 1) if lhs[i] != rhs[i])
                failures.append({"p": p, "identity": name, "coefficient": k, "lhs": str(lhs[k]), "rhs": str(rhs[k])})
        checked += 1
    return {"check": "elliptic_identities", "p_max": p_max, "primes_checked": checked, "pass": not failures, "failures": failures}


def elliptic_partial_product(s, X: int) -> Trace:
    """prod_{2 < p <= X} 1/(A_p(s) + B_p(s) p^-2s), for s > 2."""
    with mpmath.workdps(_WORKING_DPS):
        s = mpmath.mpf(s)
        if s <= 2:
            raise ValueError(f"s = {s} must exceed 2")
        return _product((p, EllipticFactor(p).denominator, s) for p in sympy.primerange(3, X + 1))
