"""Random consistent invariant tables for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .invariants import InvariantTable, extend_table

PRIME_POWERS = (2, 3, 4, 5, 7, 8, 9, 11)


def random_table(rng: random.Random, r: int, g: int, q: int | None = None) -> InvariantTable:
    """beta positive with beta(i) = beta(r-i); alpha(d) > beta(d) on 0..r(g-1).

    Duality then keeps gamma >= 0 on the extended range, since
    gamma(d) = alpha(top-d) q^(d-mid) - beta(d) >= gamma(top-d).
    """
    q = q or rng.choice(PRIME_POWERS)
    beta = [Fraction(0)] * r
    for i in range(r):
        j = (r - i) % r
        if j < i:
            beta[i] = beta[j]
        else:
            beta[i] = Fraction(rng.randint(1, 60), rng.randint(1, 12))
    alpha = []
    for d in range(r * (g - 1) + 1):
        alpha.append(beta[d % r] + Fraction(rng.randint(1, 400), rng.randint(1, 12)))
    return extend_table(InvariantTable(r, q, g, tuple(alpha), tuple(beta)))


def random_tables(seed: int, count: int, ranks=(1, 2, 3), genera=(2, 3, 4)) -> list[InvariantTable]:
    rng = random.Random(seed)
    return [random_table(rng, rng.choice(ranks), rng.choice(genera)) for _ in range(count)]
