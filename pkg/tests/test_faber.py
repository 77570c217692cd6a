from tautring.rationals import rat
from tautring.faber import (theta_closed, theta_d_log_coeffs, theta_d_series,
                            theta_d_series_operator, theta_series,
                            thm1_relation, zmono)


def test_theta_closed_form():
    assert theta_series(5, 4) == theta_closed(5, 4)


def test_theta_d_operator_oracle():
    z_bounds = {(1, 1): 1, (2, 2): 1}
    a = theta_d_series(z_bounds, 4, 3)
    b = theta_d_series_operator(z_bounds, 4, 3)
    assert a == b


def test_log_table_empty_sigma():
    table = theta_d_log_coeffs({}, 4, 3)
    # log Theta = -(t+1)/t log(1+x): C^r_d = (-1)^d (d-1)! for r in {-1,0}
    assert table[((), 1, 0)] == rat(-1)
    assert table[((), 2, 0)] == rat(1)
    assert table[((), 3, 0)] == rat(-2)
    assert table[((), 3, -1)] == rat(-2)


def test_log_table_budget_consistency():
    bounds = {(1, 1): 2, (1, 2): 2, (2, 1): 2}
    combined = theta_d_log_coeffs(bounds, 3, 3, budget=2)
    single = theta_d_log_coeffs({(1, 1): 2}, 3, 3)
    for key, v in single.items():
        assert combined.get(key, rat(0)) == v


def test_thm1_window():
    assert thm1_relation(3, 2, 4, ()) is None  # d = 4 = 2g - 2 fails
    rel = thm1_relation(3, 2, 5, ())
    assert rel is not None and rel.family == "FABER"
    assert rel.poly.is_homogeneous(2)


def test_thm1_with_z_insertion():
    sigma = zmono({(1, 1): 1})
    rel = thm1_relation(2, 3, 3, sigma)
    assert rel is not None
    assert rel.poly.specialize_genus(2).is_homogeneous(3)
