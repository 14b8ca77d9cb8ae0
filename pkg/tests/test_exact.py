from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nazeta.exact import (
    Poly,
    RootFindingError,
    Series,
    as_rat,
    complex_roots,
    discriminant,
    poly_gcd,
    power_sums,
    rational_reduce,
    reciprocal_roots,
    resultant,
    series_exp,
    series_inverse,
    series_log,
)

from conftest import polys, rats


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    a, b, c = Poly(a), Poly(b), Poly(c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly()


@given(polys, polys.filter(lambda cs: any(cs)))
def test_divmod(a, b):
    a, b = Poly(a), Poly(b)
    quo, rem = a.divmod(b)
    assert quo * b + rem == a
    assert rem.degree < b.degree


@given(polys, rats)
def test_horner_matches_power_sum(cs, x):
    p = Poly(cs)
    assert p(x) == sum(c * x**i for i, c in enumerate(cs))


def test_float_rejected():
    with pytest.raises(TypeError):
        as_rat(0.5)
    with pytest.raises(TypeError):
        Poly([1, 0.5])


def test_poly_immutable():
    p = Poly([1, 2])
    with pytest.raises(AttributeError):
        p.coeffs = (3,)


def test_rational_reduce_examples():
    # (t^2 - 1)/(2t - 2) = (t + 1)/2 -> monic denominator 1
    n, d = rational_reduce(Poly([-1, 0, 1]), Poly([-2, 2]))
    assert d == Poly([1])
    assert n == Poly([Fraction(1, 2), Fraction(1, 2)])
    n, d = rational_reduce(Poly([1, 2, 1]), Poly([3, 3]) * Poly([0, 1]))
    assert (n, d) == (Poly([Fraction(1, 3), Fraction(1, 3)]), Poly([0, 1]))
    with pytest.raises(ZeroDivisionError):
        rational_reduce(Poly([1]), Poly())


@given(polys, polys.filter(lambda cs: any(cs)), polys.filter(lambda cs: any(cs)))
@settings(max_examples=50)
def test_rational_reduce_preserves_value(a, b, c):
    num, den = Poly(a) * Poly(c), Poly(b) * Poly(c)
    n, d = rational_reduce(num, den)
    assert d.lead() == 1
    assert n * den == d * num
    assert poly_gcd(n, d).degree == 0 or n.is_zero()


def test_resultant_and_discriminant():
    assert resultant(Poly([-1, 0, 1]), Poly([-2, 1])) == 3
    assert discriminant(Poly([1, 0, 1])) == -4
    # x^5 - x, cross-checked with sympy
    assert discriminant(Poly([0, -1, 0, 0, 0, 1])) == -256


@given(st.lists(rats, min_size=1, max_size=8))
def test_exp_log_inverse(cs):
    s = Series.of([0] + cs, 8)
    assert series_log(series_exp(s)) == s
    e = series_exp(s)
    assert e * series_inverse(e) == Series.of([1], 8)


def test_exp_rejects_constant_term():
    with pytest.raises(ValueError):
        series_exp(Series.of([1, 1], 4))
    with pytest.raises(ValueError):
        series_log(Series.of([2, 1], 4))


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5))
def test_power_sums_vieta(ws):
    # P(t) = prod (1 - w t): power sums of the reciprocal roots are sum w^m
    P = Poly([1])
    for w in ws:
        P = P * Poly([1, -w])
    assert power_sums(P, 6) == [sum(Fraction(w) ** m for w in ws) for m in range(1, 7)]


def test_complex_roots_examples():
    rs = complex_roots(Poly([-2, 0, 1]))
    assert sorted(round(r.real, 12) for r in rs.roots) == [round(-(2**0.5), 12), round(2**0.5, 12)]
    rs = reciprocal_roots(Poly([1, 0, 9]))
    assert all(abs(abs(w) - 3) < 1e-12 for w in rs.roots)
    with pytest.raises(ValueError):
        complex_roots(Poly([3]))


def test_complex_roots_multiplicity():
    # (1 - 5t^2)^2 has double roots
    rs = reciprocal_roots(Poly([1, 0, -10, 0, 25]))
    assert len(rs) == 4
    assert all(abs(abs(w) - 5**0.5) < 1e-6 for w in rs.roots)


def test_root_residual_enforced():
    with pytest.raises(RootFindingError):
        complex_roots(Poly([1, 0, 1]), tol=0.0)
