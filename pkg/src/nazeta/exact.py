"""Exact rationals, dense polynomials, truncated power series and numeric roots.

Scalars are :class:`fractions.Fraction` throughout (aliased ``Rat``).  A
polynomial stores its coefficients lowest degree first; a series additionally
carries its truncation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Rat = Fraction


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("refusing to convert a float to an exact rational")
    return Fraction(x)


class Poly:
    """Immutable dense univariate polynomial with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, n: int, c=1) -> "Poly":
        return cls([0] * n + [c])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return poly_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, int) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scale(self, c) -> "Poly":
        c = as_rat(c)
        return Poly(c * a for a in self.coeffs)

    def reversed(self, n: int | None = None) -> "Poly":
        """t^n p(1/t); n defaults to the degree."""
        n = self.degree if n is None else n
        return Poly(self[n - i] for i in range(n + 1))

    def subs_scale(self, c) -> "Poly":
        """p(c t)."""
        c = as_rat(c)
        return Poly(a * c**i for i, a in enumerate(self.coeffs))

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lead()
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] / lc
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quo), Poly(rem[:dq])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_complex(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs])


def poly_mul(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly()
    out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
    return Poly(out)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    if a.is_zero():
        return a
    return a.scale(1 / a.lead())


def rational_reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Cancel the common factor of num/den; the returned denominator is monic."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    g = poly_gcd(num, den) if not num.is_zero() else den
    n, r1 = num.divmod(g)
    d, r2 = den.divmod(g)
    assert r1.is_zero() and r2.is_zero()
    lc = d.lead()
    return n.scale(1 / lc), d.scale(1 / lc)


def resultant(a: Poly, b: Poly) -> Fraction:
    """Resultant via the Euclidean remainder sequence."""
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    da, db = a.degree, b.degree
    if db == 0:
        return b.lead() ** da
    if da < db:
        sign = -1 if (da * db) % 2 else 1
        return sign * resultant(b, a)
    r = a.divmod(b)[1]
    if r.is_zero():
        return Fraction(0)
    sign = -1 if (da * db) % 2 else 1
    return sign * b.lead() ** (da - r.degree) * resultant(b, r)


def discriminant(f: Poly) -> Fraction:
    n = f.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lead()


# --- truncated power series ------------------------------------------------


@dataclass(frozen=True)
class Series:
    """Power series known modulo t^(order+1)."""

    coeffs: tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"series of order {self.order} needs {self.order + 1} coefficients")

    @classmethod
    def of(cls, coeffs: Sequence, order: int) -> "Series":
        cs = [as_rat(c) for c in coeffs[: order + 1]]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(cs), order)

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "Series":
        return cls.of(p.coeffs, order)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __add__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series.of([self[i] + other[i] for i in range(n + 1)], n)

    def __sub__(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series.of([self[i] - other[i] for i in range(n + 1)], n)

    def __mul__(self, other):
        if not isinstance(other, Series):
            c = as_rat(other)
            return Series(tuple(c * a for a in self.coeffs), self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            if self[i]:
                for j in range(n + 1 - i):
                    out[i + j] += self[i] * other[j]
        return Series(tuple(out), n)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "Series":
        return Series.of(self.coeffs, min(order, self.order))

    def to_poly(self) -> Poly:
        return Poly(self.coeffs)


def series_inverse(s: Series) -> Series:
    if s[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = 1 / s[0]
    out = [inv0]
    for n in range(1, s.order + 1):
        acc = sum((s[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
        out.append(-acc * inv0)
    return Series(tuple(out), s.order)


def series_derivative_coeffs(s: Series) -> list[Fraction]:
    return [k * s[k] for k in range(1, s.order + 1)]


def series_exp(s: Series) -> Series:
    """exp(s) for s with zero constant term, via  n e_n = sum k s_k e_{n-k}."""
    if s[0] != 0:
        raise ValueError("series_exp needs a zero constant term")
    e = [Fraction(1)]
    for n in range(1, s.order + 1):
        acc = sum((k * s[k] * e[n - k] for k in range(1, n + 1)), Fraction(0))
        e.append(acc / n)
    return Series(tuple(e), s.order)


def series_log(s: Series) -> Series:
    """log(s) for s with constant term 1."""
    if s[0] != 1:
        raise ValueError("series_log needs constant term 1")
    # n l_n = n s_n - sum_{k=1}^{n-1} k l_k s_{n-k}
    l = [Fraction(0)]
    for n in range(1, s.order + 1):
        acc = n * s[n] - sum((k * l[k] * s[n - k] for k in range(1, n)), Fraction(0))
        l.append(acc / n)
    return Series(tuple(l), s.order)


def power_sums(p: Poly, count: int) -> list[Fraction]:
    """Power sums p_1..p_count of the reciprocal roots of p (Newton's identities).

    Writing p(t)/p(0) = 1 + c_1 t + ..., the reciprocal roots w satisfy
    p_m + c_1 p_{m-1} + ... + c_{m-1} p_1 + m c_m = 0.
    """
    if p[0] == 0:
        raise ValueError("reciprocal roots need a nonzero constant term")
    c = [p[k] / p[0] for k in range(count + 1)]
    sums: list[Fraction] = []
    for m in range(1, count + 1):
        acc = m * c[m]
        for k in range(1, m):
            acc += c[k] * sums[m - k - 1]
        sums.append(-acc)
    return sums


# --- numeric roots -----------------------------------------------------------


class RootFindingError(ArithmeticError):
    pass


@dataclass(frozen=True)
class RootSet:
    roots: tuple[complex, ...]
    scale: float = 1.0

    def moduli(self) -> list[float]:
        return [abs(z) for z in self.roots]

    def __len__(self):
        return len(self.roots)


def _residual(c: np.ndarray, z: complex) -> float:
    # c lowest degree first; relative backward error
    val = np.polyval(c[::-1], z)
    absz = abs(z)
    denom = sum(abs(a) * absz**i for i, a in enumerate(c))
    return abs(val) / denom if denom else abs(val)


def complex_roots(p: Poly, scale: float = 1.0, tol: float = 1e-9, max_iter: int = 80) -> RootSet:
    """All complex roots of p with multiplicity.

    Companion-matrix eigenvalues (numpy) followed by Newton polishing; every
    root must reach a relative residual below ``tol``.
    """
    if p.degree < 1:
        raise ValueError("complex_roots needs degree >= 1")
    c = p.to_complex()
    c = c / np.max(np.abs(c))
    dc = np.array([i * a for i, a in enumerate(c)][1:])
    approx = np.roots(c[::-1])
    polished = []
    for z in approx:
        z = complex(z)
        for _ in range(max_iter):
            if _residual(c, z) < tol * 1e-3:
                break
            fz = np.polyval(c[::-1], z)
            dfz = np.polyval(dc[::-1], z)
            if dfz == 0:
                break
            step = fz / dfz
            cand = z - step
            # Newton can wander near multiple roots; keep only improvements
            if _residual(c, cand) >= _residual(c, z):
                break
            z = cand
        if _residual(c, z) >= tol:
            raise RootFindingError(f"root {z} has residual {_residual(c, z):.3e} >= {tol}")
        polished.append(z)
    return RootSet(tuple(polished), scale)


def reciprocal_roots(p: Poly, scale: float = 1.0) -> RootSet:
    """Roots of t^deg p(1/t), i.e. the w_i in p(t) = p(0) prod (1 - w_i t)."""
    if p[0] == 0:
        raise ValueError("reciprocal roots need a nonzero constant term")
    return complex_roots(p.reversed(), scale)
