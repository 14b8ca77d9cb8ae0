"""Rank-2 zeta functions of genus-2 curves from their Artin data.

gamma(0), gamma(1), gamma(2) come from counting the semistable bundles with
sections class by class over Pic^d; beta from the rank-2 mass formulas in
:mod:`nazeta.invariants`.  Everything is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .artin import ArtinZeta, class_number
from .assembly import InconsistencyError, LocalZeta, assemble
from .invariants import (
    BETA2_VARIANTS,
    InvariantError,
    InvariantTable,
    beta2_per_determinant,
    clifford_check,
    extend_table,
    frac_str,
    siegel_mass,
)

WEIGHTINGS = ("paper", "pic-partition")
WEIERSTRASS_POINTS = 4


class NoConsistentVariantError(InconsistencyError):
    pass


@dataclass(frozen=True)
class Genus2Inputs:
    z: ArtinZeta
    variant: str = "hn"
    weights: str = "paper"

    def __post_init__(self):
        if self.z.g != 2:
            raise ValueError(f"genus-2 pipeline needs g = 2, got {self.z.g}")
        if self.variant not in BETA2_VARIANTS:
            raise ValueError(f"variant must be one of {BETA2_VARIANTS}")
        if self.weights not in WEIGHTINGS:
            raise ValueError(f"weights must be one of {WEIGHTINGS}")

    @property
    def q(self) -> int:
        return self.z.q

    @property
    def h(self) -> Fraction:
        return class_number(self.z)

    @property
    def N1(self) -> Fraction:
        return self.q + 1 - self.z.power_sums(1)[0]


# --- per-class values -----------------------------------------------------------
#
# A class [V] contributes sum (q^h0(V) - 1)/#Aut(V) over the bundles V in it.
# Strata are lists of (how many, h0, #Aut).


def _strata_sum(q: int, strata) -> Fraction:
    return sum((Fraction(n * (q**h0 - 1)) / aut for n, h0, aut in strata), Fraction(0))


def _split_pair(q: int):
    """O(A) + O(A) and the P^1 of non-trivial self-extensions."""
    return [(1, 2, (q * q - 1) * (q * q - q)), (q + 1, 1, q * (q - 1))]


def class_value_deg0(q: int, trivial: bool) -> Fraction:
    if trivial:
        return _strata_sum(q, _split_pair(q))
    return _strata_sum(q, [(1, 1, (q - 1) ** 2), (1, 1, q - 1)])


def class_value_deg1(q: int) -> Fraction:
    # W^0(L) is a P^1 of stable bundles with h0 = 1
    return _strata_sum(q, [(q + 1, 1, q - 1)])


def class_value_deg2(q: int, N1, kind: str) -> Fraction:
    """kind: 'generic' (L not in the diagonal image, L != K), 'delta', 'canonical'."""
    if kind in ("generic", "delta"):
        strata = [
            (q * q + q + 1 - (N1 - 1), 1, q - 1),
            (N1 - 2, 1, (q - 1) ** 2),
            (N1 - 2, 1, q - 1),
        ]
        if kind == "generic":
            strata += [(1, 2, (q - 1) ** 2), (2, 1, q - 1)]
        else:
            strata += _split_pair(q)
        return _strata_sum(q, strata)
    if kind == "canonical":
        w = WEIERSTRASS_POINTS
        strata = [
            (q * q + q + 1 - (q + 1), 1, q - 1),
            (q + 1 - w, 2, (q - 1) ** 2),
            (2 * (q + 1 - w), 1, q - 1),
        ]
        strata += [(w * n, h0, aut) for n, h0, aut in _split_pair(q)]
        return _strata_sum(q, strata)
    raise ValueError(f"unknown class kind {kind!r}")


def class_value_deg2_closed(q: int, N1, kind: str) -> Fraction:
    if kind == "generic":
        return Fraction(q**3 + 2 * q - 3 + N1, q - 1)
    if kind == "delta":
        return Fraction(q**3 - 2 + N1, q - 1)
    if kind == "canonical":
        return Fraction(q * q + 3 * q - 3)
    raise ValueError(f"unknown class kind {kind!r}")


def strata_weights(inp: Genus2Inputs) -> dict[str, Fraction]:
    """Number of classes of each kind in Pic^2(C)(F_q); they sum to h."""
    q, h, N1 = inp.q, inp.h, inp.N1
    if inp.weights == "paper":
        delta = Fraction(q)
    else:
        delta = N1 - WEIERSTRASS_POINTS
    return {"generic": h - delta - 1, "delta": delta, "canonical": Fraction(1)}


# --- gamma(0), gamma(1), gamma(2) ------------------------------------------------


def gamma0(inp: Genus2Inputs) -> Fraction:
    return class_value_deg0(inp.q, True) * inp.h


def gamma1(inp: Genus2Inputs) -> Fraction:
    return class_value_deg1(inp.q) * inp.h


def gamma2(inp: Genus2Inputs) -> Fraction:
    w = strata_weights(inp)
    return sum((w[k] * class_value_deg2_closed(inp.q, inp.N1, k) for k in w), Fraction(0))


def rank2_table(inp: Genus2Inputs) -> InvariantTable:
    h = inp.h
    b0 = h * beta2_per_determinant(inp.z, 0, inp.variant)
    b1 = h * beta2_per_determinant(inp.z, 1, inp.variant)
    alpha = (gamma0(inp) + b0, gamma1(inp) + b1, gamma2(inp) + b0)
    return extend_table(InvariantTable(2, inp.q, 2, alpha, (b0, b1)))


# --- arbitration -------------------------------------------------------------------


@dataclass
class VariantOutcome:
    variant: str
    weights: str
    gammas: tuple[Fraction, ...]
    betas: tuple[Fraction, ...]
    zeta: LocalZeta | None
    failure: str | None
    mass_bound_ok: bool
    clifford_ok: bool | None

    @property
    def survives(self) -> bool:
        return self.zeta is not None

    def as_dict(self) -> dict:
        return {
            "variant": self.variant,
            "weights": self.weights,
            "gamma": [frac_str(x) for x in self.gammas],
            "beta": [frac_str(x) for x in self.betas],
            "P": [frac_str(c) for c in self.zeta.P.coeffs] if self.zeta else None,
            "fe_pass": self.zeta is not None,
            "first_violation": self.failure,
            "mass_bound": self.mass_bound_ok,
            "clifford": self.clifford_ok,
        }


@dataclass
class ArbitrationReport:
    q: int
    h: Fraction
    N1: Fraction
    outcomes: list[VariantOutcome]
    selected: tuple[str, str] | None
    notes: list[str] = field(default_factory=list)

    @property
    def survivors(self) -> list[VariantOutcome]:
        return [o for o in self.outcomes if o.survives]

    @property
    def distinct_survivors(self) -> int:
        return len({o.zeta.P for o in self.survivors})

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "h": frac_str(self.h),
            "N1": frac_str(self.N1),
            "selected": list(self.selected) if self.selected else None,
            "survivors": [[o.variant, o.weights] for o in self.survivors],
            "distinct_surviving_numerators": self.distinct_survivors,
            "notes": self.notes,
            "combinations": [o.as_dict() for o in self.outcomes],
        }


def evaluate_combination(z: ArtinZeta, variant: str, weights: str) -> VariantOutcome:
    inp = Genus2Inputs(z, variant, weights)
    h = inp.h
    betas = tuple(h * beta2_per_determinant(z, d, variant) for d in (0, 1))
    gammas = (gamma0(inp), gamma1(inp), gamma2(inp))
    mass = siegel_mass(2, z)
    mass_ok = all(0 < b / h <= mass for b in betas)
    try:
        table = rank2_table(inp)
    except InvariantError as exc:
        return VariantOutcome(variant, weights, gammas, betas, None, f"invariant table: {exc}", mass_ok, None)
    clifford_ok = clifford_check(table).ok
    try:
        zeta = assemble(table)
    except InconsistencyError as exc:
        return VariantOutcome(variant, weights, gammas, betas, None, str(exc), mass_ok, clifford_ok)
    return VariantOutcome(variant, weights, gammas, betas, zeta, None, mass_ok, clifford_ok)


def build_zeta(inp: Genus2Inputs) -> tuple[LocalZeta, ArbitrationReport]:
    """Evaluate every (beta variant, stratum weighting) pair in lexicographic
    order and return the degree-8 numerator for the requested pair.

    A pair survives when its table satisfies all the alpha/beta/gamma
    relations (non-negativity included) and the assembled P passes the exact
    functional equation.  The requested pair must survive; when several
    survivors disagree the report says so, since the functional equation alone
    cannot separate them.
    """
    z = inp.z
    outcomes = [evaluate_combination(z, v, w) for v, w in itertools.product(sorted(BETA2_VARIANTS), sorted(WEIGHTINGS))]
    report = ArbitrationReport(inp.q, inp.h, inp.N1, outcomes, None)
    survivors = report.survivors
    if not survivors:
        lines = [f"({o.variant}, {o.weights}): {o.failure}" for o in outcomes]
        raise NoConsistentVariantError("no (variant, weights) pair gives a consistent rank-2 table:\n" + "\n".join(lines))
    chosen = next((o for o in outcomes if (o.variant, o.weights) == (inp.variant, inp.weights)))
    if report.distinct_survivors > 1:
        report.notes.append(
            f"{report.distinct_survivors} distinct numerators pass the functional equation; "
            "the requested pair is returned"
        )
    if not chosen.survives:
        raise NoConsistentVariantError(
            f"requested pair ({inp.variant}, {inp.weights}) fails: {chosen.failure}; "
            f"surviving pairs: {[(o.variant, o.weights) for o in survivors]}"
        )
    report.selected = (chosen.variant, chosen.weights)
    return chosen.zeta, report
