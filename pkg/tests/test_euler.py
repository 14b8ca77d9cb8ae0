import mpmath
import pytest

from nazeta.euler import (
    GlobalZetaSpec,
    convergence_bound,
    elliptic_identities,
    elliptic_partial_product,
    hasse_weil_partial_product,
    local_zeta,
    normalized_factor,
    partial_product,
)


def test_bound():
    assert convergence_bound(2, 2) == 5
    assert convergence_bound(1, 2) == 3


def test_rank1_matches_hasse_weil(curve):
    spec = GlobalZetaSpec(curve, 1)
    a = partial_product(spec, 4, 400).value
    b = hasse_weil_partial_product(curve, 4, 400).value
    assert abs(a - b) < mpmath.mpf(10) ** -28
    assert mpmath.nstr(a, 30) == "1.00018098084468368186682825288"


def test_rank2_converges(curve):
    spec = GlobalZetaSpec(curve, 2)
    tr = partial_product(spec, 5, 400)
    assert abs(tr.running_at(400) - tr.running_at(200)) < 1e-6
    # factors approach 1 past p = 50
    devs = [abs(f - 1) for p, f, _ in tr.rows if p > 50]
    assert max(devs[len(devs) // 2 :]) < max(devs[: len(devs) // 2])


def test_below_bound_rejected(curve):
    with pytest.raises(ValueError, match="convergence bound"):
        partial_product(GlobalZetaSpec(curve, 2), 4.5, 50)


def test_empty_product(curve):
    assert partial_product(GlobalZetaSpec(curve, 1), 3, 2).value == 1


def test_trace_csv_stable(curve):
    a = partial_product(GlobalZetaSpec(curve, 2), 5, 60).to_csv()
    b = partial_product(GlobalZetaSpec(curve, 2), 5, 60).to_csv()
    assert a == b
    row = a.splitlines()[1].split(",")
    assert row[0] == "3" and len(row[2].replace(".", "")) >= 30


def test_cache_coherent(curve, monkeypatch):
    monkeypatch.setenv("NAZETA_THREADS", "4")
    spec = GlobalZetaSpec(curve, 2)
    partial_product(spec, 5, 60)
    for p, z in spec.locals.items():
        assert z.P == local_zeta(curve, p, 2).P
    assert normalized_factor(spec.locals[3])[0] == 1


def test_elliptic():
    assert elliptic_identities(997)["pass"]
    with pytest.raises(ValueError):
        elliptic_identities(2)
    tr = elliptic_partial_product(3, 100)
    vals = [run for _, _, run in tr.rows]
    assert all(x > y for x, y in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        elliptic_partial_product(2, 100)
