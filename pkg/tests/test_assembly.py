import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nazeta.assembly import (
    InconsistencyError,
    LocalZeta,
    assemble,
    fe_violation,
    nm_series,
    reconstruct_series,
    root_of_unity_product,
    root_pairing,
    tail_closed_form,
    tail_series,
    ugly_coefficients,
    xi_symmetry,
)
from nazeta.exact import Poly
from nazeta.invariants import InvariantError, InvariantTable, extend_table, rank1_table
from nazeta.synthetic import random_table

seeds = st.integers(0, 10**9)


def _table(seed, r=None, g=None):
    rng = random.Random(seed)
    return random_table(rng, r or rng.choice((1, 2, 3)), g or rng.choice((2, 3, 4)))


@given(seeds)
@settings(max_examples=60)
def test_fe_and_degree(seed):
    t = _table(seed)
    z = assemble(t, order=2 * t.r * t.g + 8)
    assert z.P.degree == 2 * t.r * t.g
    assert fe_violation(z.P, t.r, t.q, t.g) is None


@given(seeds)
@settings(max_examples=40)
def test_series_matches_table(seed):
    t = _table(seed)
    z = assemble(t)
    s = z.series(t.top + 3 * t.r)
    for d in range(t.top + 1):
        assert s[d] == t.gamma_at(d)
    # tail coefficient beyond the finite part
    d = t.top + t.r
    assert s[d] == t.beta_at(d) * (Fraction(t.q) ** (d - t.mid) - 1)


@given(seeds)
@settings(max_examples=30)
def test_two_paths(seed):
    t = _table(seed, g=4)
    assert ugly_coefficients(t) == list(assemble(t).P.coeffs[: t.r * t.g + 1])


def test_ugly_needs_g4(z3):
    with pytest.raises(ValueError):
        ugly_coefficients(rank1_table(z3))


@pytest.mark.parametrize("r,g,i", [(1, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 2)])
def test_tail_closed_form_numeric(r, g, i):
    q, beta = 5, Fraction(7, 3)
    num, den = tail_closed_form(r, q, g, i, beta)
    t = 0.1
    closed = float(num(Fraction(t))) / float(den(Fraction(t)))
    shift = float(q) ** (-r * (g - 1))
    direct = sum(float(beta) * ((q * t) ** (n * r + i) * shift - t ** (n * r + i)) for n in range(2 * g - 2, 200))
    assert abs(closed - direct) < 1e-12


def test_tail_series_exact():
    r, q, g, i, b = 2, 3, 3, 1, Fraction(2)
    num, den = tail_closed_form(r, q, g, i, b)
    from nazeta.exact import Series, series_inverse

    ser = Series.from_poly(num, 30) * series_inverse(Series.from_poly(den, 30))
    assert ser == tail_series(r, q, g, i, b, 30)


def test_rank1_equals_artin(z3, z5):
    for z in (z3, z5):
        assert assemble(rank1_table(z)).P == z.numerator


def test_broken_table_rejected():
    assemble(InvariantTable(1, 3, 2, (5, 8, 15), (4,)))
    # any beta cancels above 2rg, so a table only fails through its own relations
    assemble(InvariantTable(1, 3, 2, (5, 8, 15), (Fraction(9, 2),)))
    with pytest.raises(InvariantError, match="alpha\\(2\\)"):
        assemble(InvariantTable(1, 3, 2, (5, 8, 16), (4,)))
    with pytest.raises(InconsistencyError, match="partial"):
        assemble(InvariantTable(1, 3, 2, (5, 8), (4,)))


def test_local_zeta_rejects_fe_violation():
    with pytest.raises(InconsistencyError, match="a_4"):
        LocalZeta(1, 3, 2, Poly([1, 0, -2, 0, 8]))


@given(seeds)
@settings(max_examples=25)
def test_nm_roundtrip(seed):
    z = assemble(_table(seed))
    order = z.degree + 4
    assert reconstruct_series(z, nm_series(z, order), order) == z.series(order)


def test_nm_rank1_counts(z3, curve):
    from nazeta.curves import point_counts

    assert list(nm_series(assemble(rank1_table(z3)), 4).values) == list(point_counts(curve, 3, 4).counts)


@given(seeds)
@settings(max_examples=25)
def test_root_pairing(seed):
    assert root_pairing(assemble(_table(seed)))["pass"]


@given(seeds, st.integers(1, 4))
@settings(max_examples=15, deadline=None)
def test_root_of_unity_product(seed, a):
    z = assemble(_table(seed, r=random.Random(seed).choice((1, 2))))
    assert root_of_unity_product(z, a, 6)["pass"]


def test_root_of_unity_bounds(z3):
    z = assemble(rank1_table(z3))
    assert root_of_unity_product(z, 2, 8)["pass"]
    with pytest.raises(ValueError):
        root_of_unity_product(z, 7, 3)


@given(seeds)
@settings(max_examples=20)
def test_xi_symmetry(seed):
    assert xi_symmetry(assemble(_table(seed)))["pass"]
