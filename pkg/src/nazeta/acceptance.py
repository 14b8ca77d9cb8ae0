"""Acceptance checks shared by ``nazeta selftest`` and tests/test_acceptance.py.

Every check returns a :class:`Result`; none of them raise on a failed
criterion.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable

import mpmath

from .artin import ArtinZeta, weil_check, zeta_from_counts
from .assembly import (
    LocalZeta,
    assemble,
    fe_violation,
    nm_series,
    reconstruct_series,
    root_pairing,
    ugly_coefficients,
)
from .curves import CurveModel, count_points, count_points_naive, find_irreducible, parse_curve, point_counts
from .euler import GlobalZetaSpec, convergence_bound, elliptic_identities, elliptic_partial_product, partial_product
from .genus2 import WEIGHTINGS, Genus2Inputs, build_zeta, evaluate_combination, rank2_table
from .invariants import beta2_per_determinant, clifford_check, rank1_table, siegel_mass
from .synthetic import random_table, random_tables

FIXTURE_PRIMES = (3, 5)


@dataclass
class Result:
    number: int
    name: str
    tag: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.number:2d} {self.name} ({self.seconds:.2f}s): {self.detail}"

    def as_dict(self) -> dict:
        return {"criterion": self.number, "name": self.name, "tag": self.tag, "pass": self.ok, "detail": self.detail, "seconds": round(self.seconds, 3)}


def fixture_text(name: str) -> str:
    return resources.files("nazeta").joinpath("fixtures", name).read_text()


def fixture_curve() -> CurveModel:
    return parse_curve(fixture_text("x5-x.curve"), "x5-x.curve")[0]


def fixture_zeta(p: int, upto: int = 4) -> ArtinZeta:
    return zeta_from_counts(point_counts(fixture_curve(), p, upto))


def arbitration_json(p: int) -> str:
    _, report = build_zeta(Genus2Inputs(fixture_zeta(p)))
    return json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n"


def rank2_survivors(p: int) -> list[LocalZeta]:
    z = fixture_zeta(p)
    outs = [evaluate_combination(z, "hn", w) for w in WEIGHTINGS]
    return [o.zeta for o in outs if o.zeta is not None]


# --- criteria ------------------------------------------------------------------


def c01_rank1_reduction() -> tuple[bool, str]:
    parts = []
    ok = True
    for p in FIXTURE_PRIMES:
        z = fixture_zeta(p)
        P = assemble(rank1_table(z)).P
        same = P == z.numerator
        ok &= same
        parts.append(f"F_{p}: assembled {P} {'==' if same else '!='} Artin {z.numerator}")
    return ok, "; ".join(parts)


def c02_point_count_oracle() -> tuple[bool, str]:
    curves = [
        fixture_curve(),
        CurveModel((1, 0, 0, 1), "Q", 1),
        CurveModel((1, 3, 0, 1, 0, 2), "Q", 2),
        CurveModel((2, 1, 0, 0, 1, 0, 1), "Q", 2),
    ]
    checked, mism = 0, []
    for curve in curves:
        for p in (3, 5, 7, 11):
            try:
                curve.over(p)
                count_points(curve, p, 1)
            except ValueError:
                continue
            m = 1
            while p**m <= 125:
                field = find_irreducible(p, m)
                a, b = count_points(curve, p, m, field), count_points_naive(curve, p, m, field)
                checked += 1
                if a != b:
                    mism.append((curve.f_coeffs, p, m, a, b))
                m += 1
    return not mism and checked > 0, f"{checked} (curve, p, m) cases with p^m <= 125, mismatches: {mism}"


def c03_weil() -> tuple[bool, str]:
    parts, ok = [], True
    for p in FIXTURE_PRIMES:
        rep = weil_check(fixture_zeta(p))
        ok &= rep.ok
        parts.append(f"F_{p}: moduli {[round(m, 9) for m in rep.moduli]} vs sqrt(q) = {p ** 0.5:.9f}, exact p_m^2 <= 16 q^m: {rep.power_sum_bounds_ok}")
    return ok, "; ".join(parts)


def c04_fe_property_suite() -> tuple[bool, str]:
    tables = random_tables(seed=20240401, count=100)
    bad = []
    for t in tables:
        L = assemble(t)  # raises on non-cancellation above 2rg
        v = fe_violation(L.P, t.r, t.q, t.g)
        if v or L.P.degree != 2 * t.r * t.g:
            bad.append((t.r, t.g, t.q, v))
    kinds = sorted({(t.r, t.g) for t in tables})
    return not bad, f"100 tables over (r, g) in {kinds}; failures: {bad}"


def c05_two_path() -> tuple[bool, str]:
    rng = random.Random(7)
    bad = 0
    for _ in range(50):
        t = random_table(rng, rng.choice((1, 2, 3)), 4)
        low = assemble(t).P.coeffs[: t.r * t.g + 1]
        if tuple(ugly_coefficients(t)) != tuple(low):
            bad += 1
    return bad == 0, f"50 tables with g = 4: {50 - bad} agree exactly"


def c06_nm_roundtrip() -> tuple[bool, str]:
    zetas: list[LocalZeta] = []
    brute_ok = True
    curve = fixture_curve()
    for p in FIXTURE_PRIMES:
        z1 = assemble(rank1_table(fixture_zeta(p)))
        zetas.append(z1)
        brute = [count_points(curve, p, m) for m in range(1, 5)]
        brute_ok &= list(nm_series(z1, 4).values) == brute
        zetas.extend(rank2_survivors(p))
    zetas.extend(assemble(t) for t in random_tables(seed=11, count=10))
    bad = 0
    for z in zetas:
        order = 2 * z.r * z.g + 4
        if reconstruct_series(z, nm_series(z, order), order) != z.series(order):
            bad += 1
    return bad == 0 and brute_ok, f"{len(zetas) - bad}/{len(zetas)} zetas reconstruct to order 2rg+4; rank-1 N(m) == brute counts (m <= 4): {brute_ok}"


def c07_root_pairing() -> tuple[bool, str]:
    zetas = []
    for p in FIXTURE_PRIMES:
        zetas.append(assemble(rank1_table(fixture_zeta(p))))
        zetas.extend(rank2_survivors(p))
    zetas.extend(assemble(t) for t in random_tables(seed=3, count=30))
    worst, bad = 0.0, 0
    for z in zetas:
        rep = root_pairing(z)
        bad += not rep["pass"]
        worst = max([worst] + [pr["product_error"] for pr in rep["pairs"]])
    return bad == 0, f"{len(zetas)} local zetas, worst |w w' - q| = {worst:.2e}"


def c08_genus2_pipeline() -> tuple[bool, str]:
    parts, ok = [], True
    for p in FIXTURE_PRIMES:
        z = fixture_zeta(p)
        L, report = build_zeta(Genus2Inputs(z))
        h = report.h
        good = L.P.degree == 8 and fe_violation(L.P, 2, p, 2) is None and L.P[0] == Fraction(p, p - 1) * h
        frozen = fixture_text(f"arbitration_F{p}.json")
        same = arbitration_json(p) == frozen
        ok &= good and same
        parts.append(f"F_{p}: survivors {[(o.variant, o.weights) for o in report.survivors]}, P(0) = {L.P[0]}, frozen report {'matches' if same else 'DIFFERS'}")
    return ok, "; ".join(parts)


def c09_elliptic() -> tuple[bool, str]:
    rep = elliptic_identities(997)
    return rep["pass"], f"{rep['primes_checked']} odd primes <= 997, failures: {rep['failures'][:3]}"


def c10_convergence() -> tuple[bool, str]:
    spec = GlobalZetaSpec(fixture_curve(), 2)
    s = convergence_bound(2, 2)
    tr = partial_product(spec, s, 400)
    d_rank2 = abs(tr.running_at(400) - tr.running_at(200))
    el = elliptic_partial_product(3, 400)
    d_ell = abs(el.running_at(400) - el.running_at(200))
    ok2, oke = d_rank2 < 1e-6, d_ell < 1e-6
    return ok2 and oke, (
        f"rank 2 at s = {s}: |X=400 - X=200| = {mpmath.nstr(d_rank2, 3)} ({'ok' if ok2 else 'too large'}); "
        f"elliptic zeta_2 at s = 3: |X=400 - X=200| = {mpmath.nstr(d_ell, 3)} ({'ok' if oke else 'too large'})"
    )


def c11_mass_bound() -> tuple[bool, str]:
    parts, ok = [], True
    for p in FIXTURE_PRIMES:
        z = fixture_zeta(p)
        mass = siegel_mass(2, z)
        vals = [beta2_per_determinant(z, d, "hn") for d in (0, 1)]
        scaled = [beta2_per_determinant(z, d, "dr") for d in (0, 1)]
        good = all(0 < b <= mass for b in vals)
        ok &= good
        parts.append(f"F_{p}: beta_2(L) = {[str(b) for b in vals]} <= {mass} ({good}); dr variant gives {[str(b) for b in scaled]}")
    return ok, "; ".join(parts)


def c12_clifford() -> tuple[bool, str]:
    tables = []
    for p in FIXTURE_PRIMES:
        z = fixture_zeta(p)
        tables.append(rank1_table(z))
        for w in WEIGHTINGS:
            tables.append(rank2_table(Genus2Inputs(z, "hn", w)))
    fails = [(t.r, t.q, clifford_check(t).failures) for t in tables if not clifford_check(t).ok]
    return not fails, f"{len(tables)} fixture tables, failures: {fails}"


CRITERIA: list[tuple[int, str, str, float | None, Callable[[], tuple[bool, str]]]] = [
    (1, "rank-1 reduction", "assembly", 1.0, c01_rank1_reduction),
    (2, "point-count oracle", "curves", None, c02_point_count_oracle),
    (3, "Weil bound", "artin", None, c03_weil),
    (4, "functional-equation property suite", "assembly", 10.0, c04_fe_property_suite),
    (5, "two-path equivalence", "assembly", None, c05_two_path),
    (6, "N(m) roundtrip", "assembly", None, c06_nm_roundtrip),
    (7, "root pairing", "assembly", None, c07_root_pairing),
    (8, "genus-2 rank-2 pipeline", "genus2", None, c08_genus2_pipeline),
    (9, "elliptic identities", "euler", 1.0, c09_elliptic),
    (10, "Euler product convergence", "euler", 30.0, c10_convergence),
    (11, "mass-formula bound", "invariants", None, c11_mass_bound),
    (12, "Clifford inequality", "invariants", None, c12_clifford),
]


def run_criterion(number: int) -> Result:
    for n, name, tag, budget, fn in CRITERIA:
        if n == number:
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failed criterion, reported by name
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            dt = time.perf_counter() - t0
            if budget is not None and dt >= budget:
                ok = False
                detail += f"; runtime {dt:.2f}s exceeds {budget}s"
            return Result(n, name, tag, ok, detail, dt)
    raise KeyError(number)


def run_all(filter: str | None = None) -> list[Result]:
    out = []
    for n, name, tag, _, _ in CRITERIA:
        if filter and filter != tag and filter.lower() not in name.lower():
            continue
        out.append(run_criterion(n))
    return out
