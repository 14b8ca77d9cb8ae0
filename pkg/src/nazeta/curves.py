"""Hyperelliptic curve models y^2 = f(x), finite fields and point counting."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
import sympy
import yaml

from .exact import Poly, discriminant, poly_gcd

MAX_EXT_DEGREE = 4


class CurveError(ValueError):
    pass


class BadPrimeError(CurveError):
    pass


class CurveFileError(CurveError):
    """Malformed curve file; the message names the offending field."""


# --- prime-field polynomial helpers (lists of ints, lowest degree first) ----


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[shift + i] = (a[shift + i] - c * x) % p
        _trim(a)
    return a


def _gcd_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, _polymod_p(a, b, p)
    return a


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    m = len(poly) - 1
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _polymod_p(poly, list(tail) + [1], p):
                return False
    return True


# --- extension fields ------------------------------------------------------


@dataclass(frozen=True)
class ExtField:
    """F_{p^m} as F_p[x]/(modulus).  Elements are length-m int vectors (numpy
    arrays of shape (..., m) for the vectorised operations, tuples for the
    scalar ones)."""

    p: int
    m: int
    modulus: tuple[int, ...]  # monic, lowest degree first, length m+1

    def __post_init__(self):
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not _is_irreducible(self.modulus, self.p):
            raise ValueError(f"{self.modulus} is reducible mod {self.p}")

    @property
    def order(self) -> int:
        return self.p**self.m

    def elements(self) -> np.ndarray:
        n = np.arange(self.order, dtype=np.int64)
        digits = [(n // self.p**k) % self.p for k in range(self.m)]
        return np.stack(digits, axis=-1)

    def embed(self, c: int, shape=()) -> np.ndarray:
        out = np.zeros(shape + (self.m,), dtype=np.int64)
        out[..., 0] = c % self.p
        return out

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p, m = self.p, self.m
        a, b = np.broadcast_arrays(a, b)
        prod = np.zeros(a.shape[:-1] + (2 * m - 1,), dtype=np.int64)
        for i in range(m):
            prod[..., i : i + m] += a[..., i : i + 1] * b
        prod %= p
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[..., k].copy()
            for j in range(m):
                prod[..., k - m + j] -= c * self.modulus[j]
            prod[..., k] = 0
            prod %= p
        return prod[..., :m]

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        out = self.embed(1, a.shape[:-1])
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def horner(self, coeffs: Sequence[int], x: np.ndarray) -> np.ndarray:
        acc = self.embed(0, x.shape[:-1])
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), self.embed(c, x.shape[:-1]))
        return acc

    def encode(self, a: np.ndarray) -> np.ndarray:
        weights = self.p ** np.arange(self.m, dtype=np.int64)
        return a @ weights

    def square_table(self) -> np.ndarray:
        """Boolean lookup over encoded elements: True on the squares (0 included)."""
        if not hasattr(self, "_squares"):
            xs = self.elements()
            table = np.zeros(self.order, dtype=bool)
            table[self.encode(self.mul(xs, xs))] = True
            object.__setattr__(self, "_squares", table)
        return self._squares

    def quadratic_character(self, a: np.ndarray) -> np.ndarray:
        """+1 on nonzero squares, -1 on non-squares, 0 at zero."""
        idx = self.encode(a)
        return np.where(idx == 0, 0, np.where(self.square_table()[idx], 1, -1))

    # scalar arithmetic on tuples, used by the naive oracle
    def mul_scalar(self, a: tuple, b: tuple) -> tuple:
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] += x * y
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            for j in range(m):
                prod[k - m + j] -= c * self.modulus[j]
            prod[k] = 0
        return tuple(v % p for v in prod[:m])

    def add_scalar(self, a: tuple, b: tuple) -> tuple:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def scalar_elements(self) -> list[tuple]:
        return [tuple(int(v) for v in row) for row in self.elements()]


def find_irreducible(p: int, m: int) -> ExtField:
    """First monic irreducible polynomial of degree m over F_p, ordering the
    candidates by the integer with base-p digits c_0, c_1, ..., c_{m-1}."""
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    for n in range(p**m):
        tail = [(n // p**k) % p for k in range(m)]
        cand = tuple(tail + [1])
        if _is_irreducible(cand, p):
            return ExtField(p, m, cand)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


# --- curves ----------------------------------------------------------------


@dataclass(frozen=True)
class CurveModel:
    f_coeffs: tuple[int, ...]
    base: int | str  # a prime p, or "Q"
    declared_genus: int

    def __post_init__(self):
        f = tuple(int(c) for c in self.f_coeffs)
        while f and f[-1] == 0:
            f = f[:-1]
        object.__setattr__(self, "f_coeffs", f)
        g = self.declared_genus
        if len(f) - 1 not in (2 * g + 1, 2 * g + 2):
            raise CurveError(f"deg f = {len(f) - 1} is not 2g+1 or 2g+2 for g = {g}")
        if self.base == "Q":
            if poly_gcd(self.poly, self.poly.derivative()).degree > 0:
                raise CurveError("f is not squarefree over Q")
        else:
            p = int(self.base)
            if p == 2:
                raise CurveError("characteristic 2 is not supported")
            if not sympy.isprime(p):
                raise CurveError(f"base {p} is not prime")
            fp = [c % p for c in f]
            if _trim(list(fp)) != list(fp):
                raise CurveError(f"leading coefficient vanishes mod {p}")
            df = [i * c for i, c in enumerate(f)][1:]
            if len(_gcd_p(fp, df, p)) > 1:
                raise CurveError(f"f is not squarefree mod {p}")

    @property
    def poly(self) -> Poly:
        return Poly(self.f_coeffs)

    @property
    def genus(self) -> int:
        return self.declared_genus

    @property
    def degree(self) -> int:
        return len(self.f_coeffs) - 1

    def discriminant(self) -> int:
        d = discriminant(self.poly)
        assert d.denominator == 1
        return int(d)

    def over(self, p: int) -> "CurveModel":
        return CurveModel(self.f_coeffs, p, self.declared_genus)


@dataclass(frozen=True)
class PointCounts:
    q: int
    g: int
    counts: tuple[int, ...]  # N_1, N_2, ...

    def __post_init__(self):
        if len(self.counts) < self.g:
            raise ValueError(f"need at least g = {self.g} point counts, got {len(self.counts)}")
        for m, n in enumerate(self.counts, start=1):
            bound = self.q**m + 2 + 2 * self.g * self.q ** (m / 2)
            if not 0 <= n <= bound:
                raise ValueError(f"N_{m} = {n} outside the Weil sanity range [0, {bound:.1f}]")


def _check_good(curve: CurveModel, p: int) -> None:
    if p == 2:
        raise BadPrimeError("p = 2 is always bad for y^2 = f(x)")
    if curve.base not in ("Q", p):
        raise CurveError(f"curve is defined over F_{curve.base}, not F_{p}")
    if curve.discriminant() % p == 0 or curve.f_coeffs[-1] % p == 0:
        raise BadPrimeError(f"p = {p} divides 2*disc(f)*lc(f): bad reduction")


def _points_at_infinity(curve: CurveModel, field: ExtField) -> int:
    if curve.degree % 2:
        return 1
    lc = field.embed(curve.f_coeffs[-1], (1,))
    return int(1 + field.quadratic_character(lc)[0])


def count_points(curve: CurveModel, p: int, m: int, field: ExtField | None = None) -> int:
    """#C(F_{p^m}) on the smooth projective model of y^2 = f(x)."""
    if m > MAX_EXT_DEGREE:
        raise ValueError(f"extension degree {m} > {MAX_EXT_DEGREE} is not supported")
    _check_good(curve, p)
    field = field or find_irreducible(p, m)
    xs = field.elements()
    chi = field.quadratic_character(field.horner(curve.f_coeffs, xs))
    return int(field.order + chi.sum()) + _points_at_infinity(curve, field)


def count_points_naive(curve: CurveModel, p: int, m: int, field: ExtField | None = None) -> int:
    """Double loop over all (x, y); the independent oracle for count_points."""
    _check_good(curve, p)
    field = field or find_irreducible(p, m)
    elems = field.scalar_elements()
    squares = [field.mul_scalar(y, y) for y in elems]
    affine = 0
    for x in elems:
        fx = tuple([0] * field.m)
        for c in reversed(curve.f_coeffs):
            cvec = tuple([c % p] + [0] * (field.m - 1))
            fx = field.add_scalar(field.mul_scalar(fx, x), cvec)
        affine += sum(1 for s in squares if s == fx)
    if curve.degree % 2:
        inf = 1
    else:
        lc = tuple([curve.f_coeffs[-1] % p] + [0] * (field.m - 1))
        inf = 2 if lc in set(squares) else 0
    return affine + inf


def point_counts(curve: CurveModel, p: int, upto: int) -> PointCounts:
    counts = []
    for m in range(1, upto + 1):
        counts.append(count_points(curve, p, m))
    return PointCounts(p, curve.genus, tuple(counts))


def bad_primes(curve: CurveModel) -> set[int]:
    """{2} together with the primes dividing disc(f) or the leading coefficient.

    This is a sufficient set: it may contain primes of good reduction for
    another model of the same curve.
    """
    if curve.base != "Q":
        raise CurveError("bad_primes needs a curve over Q")
    out = {2}
    for n in (curve.discriminant(), curve.f_coeffs[-1]):
        out |= set(sympy.primefactors(abs(n)))
    return out


# --- curve files -----------------------------------------------------------


def parse_curve(text: str, source: str = "<string>") -> tuple[CurveModel, dict]:
    """Parse a curve file.  Returns the model and the remaining extra fields
    (e.g. ``rank``)."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise CurveFileError(f"{source}: unparseable curve file{where}: {exc}") from None
    if not isinstance(data, dict):
        raise CurveFileError(f"{source}: expected a mapping with fields f, base, genus")
    for key in ("f", "base", "genus"):
        if key not in data:
            raise CurveFileError(f"{source}: missing field '{key}'")
    f = data.pop("f")
    if not isinstance(f, list) or not f:
        raise CurveFileError(f"{source}: field 'f' must be a non-empty list of integers")
    for i, c in enumerate(f):
        if isinstance(c, bool) or not isinstance(c, int):
            raise CurveFileError(f"{source}: field 'f', position {i}: {c!r} is not an integer")
    base = data.pop("base")
    if base in ("Q", "q", "QQ"):
        base = "Q"
    elif isinstance(base, bool) or not isinstance(base, int):
        raise CurveFileError(f"{source}: field 'base': expected \"Q\" or a prime, got {base!r}")
    genus = data.pop("genus")
    if isinstance(genus, bool) or not isinstance(genus, int) or genus < 0:
        raise CurveFileError(f"{source}: field 'genus': expected a non-negative integer, got {genus!r}")
    try:
        curve = CurveModel(tuple(f), base, genus)
    except CurveError as exc:
        raise CurveFileError(f"{source}: {exc}") from None
    return curve, data


def load_curve(path: str | Path) -> tuple[CurveModel, dict]:
    path = Path(path)
    return parse_curve(path.read_text(), str(path))


def dump_curve(curve: CurveModel, **extra) -> str:
    base = curve.base if curve.base == "Q" else int(curve.base)
    lines = [f"f: {list(curve.f_coeffs)}", f"base: {base}", f"genus: {curve.genus}"]
    lines += [f"{k}: {v}" for k, v in extra.items()]
    return "\n".join(lines) + "\n"


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1

