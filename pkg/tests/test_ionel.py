from tautring.rationals import rat
from tautring.series import bernoulli
from tautring.kappa import KappaPoly, vectorize
from tautring.linalg import span_contains
from tautring.ionel import (b_coeffs, c_table, cn_table, df_odd,
                            gamma_x_check, gsigma_pm_relation, prop3_relation,
                            q_table, thm4_relation)
from tautring.sq import thm2_relation


def test_double_factorial_extension():
    assert df_odd(-1) == 1
    assert df_odd(-3) == -1
    assert df_odd(5) == 15


def test_q_table_values():
    q = q_table(3)
    assert q[(0, 0)] == 1
    assert q[(1, 0)] == 1
    assert q[(1, 1)] == 5


def test_c_table_values():
    c = c_table(4)
    assert c[(1, 1)] == rat(5, 6)
    assert c[(1, 0)] == rat(1, 12)
    assert c[(2, 0)] == 0
    assert c[(3, 0)] == bernoulli(4) / 12


def test_gamma_closed_forms():
    rep = gamma_x_check(7)
    assert rep["ok"], rep["checks"]


def test_b_extremal_value():
    b = b_coeffs(5)
    assert b[(1, 0)] == rat(1, 2)
    assert b[(2, 1)] == -1
    assert b[(4, 3)] == rat(-1) * 2 ** 2 * df_odd(3)


def test_cn_corner_values():
    cn = cn_table(3, 3)
    assert cn[(1, 0, 1)] == 1           # c^1_{0,1} = 4^0 0!
    assert cn[(2, 0, 2)] == 4           # c^2_{0,2} = 4^1 1!
    assert cn[(3, 0, 3)] == 32          # c^3_{0,3} = 4^2 2!


def test_thm4_matches_thm2_up_to_sign():
    for g, r, d in ((3, 2, 1), (3, 2, 2), (5, 2, 3)):
        t2 = thm2_relation(g, r, d)
        t4 = thm4_relation(g, r, d, ())
        assert t2 is not None and t4 is not None
        assert t2.poly.specialize_genus(g) == \
            t4.poly.specialize_genus(g) * (-1) ** d


def test_gsigma_single_part():
    g, r, d, sigma = 4, 2, 2, (1,)
    pm = gsigma_pm_relation(g, r, d, sigma)
    t4 = thm4_relation(g, r, d, sigma)
    assert pm is not None and t4 is not None
    assert pm.poly == t4.poly * 2


def test_prop3_in_thm4_span():
    g, r = 3, 2
    p3 = prop3_relation(g, r, ())
    rows = []
    for d in range(1, 5):
        t4 = thm4_relation(g, r, d, ())
        if t4 is not None:
            rows.append(vectorize(t4.poly.specialize_genus(g), r))
    ok, _ = span_contains(rows, vectorize(p3.poly.specialize_genus(g), r))
    assert ok


def test_prop3_known_value():
    p3 = prop3_relation(3, 2, ())
    want = (KappaPoly.kappa(1) * KappaPoly.kappa(1) * rat(25, 72)
            + KappaPoly.kappa(2, -5))
    assert p3.poly.specialize_genus(3) == want


def test_windows_return_none():
    assert prop3_relation(10, 2, ()) is None
    assert thm4_relation(8, 2, 3, ()) is None  # parity fails
