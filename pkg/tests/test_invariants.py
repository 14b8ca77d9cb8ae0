import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nazeta.artin import class_number, zeta_from_counts
from nazeta.curves import point_counts
from nazeta.invariants import (
    InvariantError,
    InvariantTable,
    beta2_lemma311,
    beta2_per_determinant,
    beta_rank2_dr,
    clifford_check,
    extend_table,
    frac_str,
    mass_bound_check,
    moduli_point_count_odd,
    parse_frac,
    rank1_table,
    siegel_mass,
    table_from_csv,
)
from nazeta.synthetic import random_table


def test_rank1_table_values(z3):
    t = rank1_table(z3)
    # Z(t) = 1 + 4t + 11t^2 + ... over F_3, with 11 = (N_1^2 + N_2)/2; beta = h/(q-1)
    assert t.beta == (Fraction(4),)
    assert t.gamma == (1, 4, 11)
    assert t.alpha == (5, 8, 15)


@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(2, 4))
def test_duality_and_nonnegativity(seed, r, g):
    t = random_table(random.Random(seed), r, g)
    for d in range(t.top + 1):
        assert t.alpha_at(d) == t.alpha_at(t.top - d) * Fraction(t.q) ** (d - t.mid)
    assert all(x >= 0 for x in t.gamma)
    assert all(t.beta_at(d) == t.beta_at(-d) for d in range(r))


def test_violations_named():
    with pytest.raises(InvariantError, match="beta\\(1\\) = 2 != beta\\(2\\) = 3"):
        extend_table(InvariantTable(3, 3, 2, (5, 6, 7, 8), (1, 2, 3)))
    assert "gamma(1) = -2 < 0" in InvariantTable(1, 3, 2, (5, -1), (1,)).violations()
    # complete table with broken duality
    v = InvariantTable(1, 3, 2, (5, 8, 16), (4,)).violations()
    assert v == ["alpha(0) = 5 != alpha(2) q^(-1) = 16/3", "alpha(2) = 16 != alpha(0) q^(1) = 15"]


def test_partial_table_shape():
    with pytest.raises(InvariantError, match="cover"):
        InvariantTable(1, 3, 2, (1, 2, 3, 4), (1,))
    with pytest.raises(InvariantError, match="residues"):
        InvariantTable(2, 3, 2, (1, 2, 3), (1,))


def test_csv_roundtrip(z5):
    t = rank1_table(z5)
    assert table_from_csv(t.to_csv(), 1, 5, 2) == t
    for x in (Fraction(-3, 7), Fraction(0), Fraction(12)):
        assert parse_frac(frac_str(x)) == x
    assert frac_str(Fraction(12)) == "12/1"


def test_siegel_mass(z3, z5):
    assert siegel_mass(1, z3) == Fraction(1, 2)
    assert siegel_mass(2, z3) == Fraction(27, 2) * Fraction(89, 54)
    assert siegel_mass(2, z5) == Fraction(125, 4) * Fraction(961, 750)


def test_hn_odd_matches_moduli_count(z3, z5, curve2):
    zs = [z3, z5] + [zeta_from_counts(point_counts(curve2, p, 2)) for p in (3, 5, 7)]
    assert any(z.power_sums(1)[0] != 0 for z in zs)
    for z in zs:
        assert beta2_per_determinant(z, 1, "hn") == moduli_point_count_odd(z) / (z.q - 1)


def test_beta_values_frozen(z3, z5):
    assert [beta2_per_determinant(z3, d, "hn") for d in (0, 1)] == [Fraction(43, 2), 20]
    assert [beta2_per_determinant(z5, d, "hn") for d in (0, 1)] == [Fraction(239, 6), 39]
    assert [beta2_per_determinant(z3, d, "dr") for d in (0, 1)] == [Fraction(-103, 4), Fraction(-487, 4)]


def test_lemma_form_is_dr_times_h(z3, z5, curve2):
    for z in (z3, z5, zeta_from_counts(point_counts(curve2, 7, 2))):
        for d in (0, 1):
            assert beta2_lemma311(z, d) == beta_rank2_dr(z, d)
            assert beta2_per_determinant(z, d, "lemma311") == beta2_per_determinant(z, d, "dr")


def test_mass_bound(z3, z5):
    for z in (z3, z5):
        assert mass_bound_check(z, "hn")["pass"]
        assert not mass_bound_check(z, "dr")["pass"]


def test_clifford(z3):
    assert clifford_check(rank1_table(z3)).ok
    t = extend_table(InvariantTable(1, 3, 2, (1000, 8), (1,)))
    rep = clifford_check(t)
    assert not rep.ok and rep.failures[0][0] == 0


def test_rank2_needs_genus2(curve2):
    from nazeta.artin import ArtinZeta
    from nazeta.exact import Poly

    z = ArtinZeta(3, 1, Poly([1, 0, 3]))
    with pytest.raises(ValueError, match="genus 2"):
        beta2_per_determinant(z, 0)
    with pytest.raises(ValueError):
        beta2_per_determinant(zeta_from_counts(point_counts(curve2, 3, 2)), 0, "bogus")
