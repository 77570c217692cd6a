import pytest

from tautring.rationals import rat
from tautring.series import SeriesError
from tautring.partitions import aut_order
from tautring.sq import (expanded_relation, f_series, f_series_operator,
                         log_phi_coeffs, phi_series, prop2_check, sq_gamma,
                         thm2_relation, thm3_relation)


def test_phi_pole_orders():
    phi = phi_series(3, 3)
    assert phi.extract({"x": 1, "t": -1}) == rat(-1)
    assert phi.extract({}) == rat(1)


def test_log_phi_simple_poles():
    table = log_phi_coeffs(4, 4)
    assert all(r >= -1 for _, r in table)
    assert table[(1, -1)] == rat(-1)


def test_thm2_window_and_parity():
    assert thm2_relation(5, 2, 1) is None   # window fails
    assert thm2_relation(4, 2, 3) is None   # parity fails
    rel = thm2_relation(3, 2, 1)
    assert rel is not None
    p = rel.poly.specialize_genus(3)
    assert p and p.is_homogeneous(2)


def test_f_series_operator_agrees():
    for n, m in ((1, 1), (2, 1), (1, 2), (3, 2)):
        assert f_series(n, m, 5, 4) == f_series_operator(n, m, 5, 4)


def test_expanded_equals_aut_times_thm3():
    g, r, d, sigma = 5, 3, 2, (1, 1)
    ex = expanded_relation(g, r, d, sigma, "minus")
    t3 = thm3_relation(g, r, d, sigma)
    assert ex.poly == t3.poly * aut_order(sigma)


def test_expanded_rejects_bad_parity_name():
    with pytest.raises(SeriesError):
        expanded_relation(3, 2, 1, (), "both")


def test_prop2_small_case():
    rep = prop2_check(6, 3, 2, (1,))
    assert rep["ok"]
    assert rep["combination"]


def test_gamma_flavors_reject_unknown():
    with pytest.raises(SeriesError):
        sq_gamma(2, 2, "spicy")
