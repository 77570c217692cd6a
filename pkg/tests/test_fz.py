import pytest

from tautring.rationals import rat
from tautring.series import SeriesError, Trunc
from tautring.fz import (a_series, b_series, c_series, cn_closed_series,
                         cn_poly, cn_series, decompose_sigma,
                         fz_reindexed_relation, identity_suite, lemma5_check,
                         psi_log_coeffs, sq_side_relation, sym_evaluate,
                         sq_symbolic, thm5_relation)
from tautring.ionel import prop3_relation


def test_hypergeometric_coefficients():
    a = a_series(2)
    b = b_series(2)
    assert a.extract({}) == 1
    assert a.extract({"z": 1}) == rat(720, 6 * 2) / 72  # (6!)/(3!2!)/72
    assert b.extract({}) == -1
    assert b.extract({"z": 1}) == a.extract({"z": 1}) * rat(7, 5)


def test_c_series_normalization():
    assert c_series(3).extract({}) == -1


def test_identity_suite_passes():
    rep = identity_suite(18)
    assert rep["ok"], rep["checks"]


def test_cn_three_ways():
    for n in (1, 2, 3):
        op = cn_series(n, 8)
        closed = cn_closed_series(n, 8)
        assert op == closed
    assert cn_poly(2) == {(0, 0): rat(1), (0, 2): rat(-1)}


def test_psi_table_values():
    table = psi_log_coeffs(2, 2)
    assert table[((), 1)] == 60
    assert table[((1,), 0)] == -1


def test_thm5_window_and_value():
    assert thm5_relation(7, 2, ()) is None  # window fails
    rel = thm5_relation(3, 2, ())
    p = rel.poly.specialize_genus(3)
    fzr = fz_reindexed_relation(3, 2, ())
    assert p == fzr.poly.specialize_genus(3) * 72 ** 2


def test_thm5_rejects_bad_parts():
    with pytest.raises(SeriesError):
        thm5_relation(3, 2, (2,))


def test_sq_side_scaling():
    g, r, sigma = 4, 2, (1,)
    sqr = sq_side_relation(g, r, sigma)
    p3 = prop3_relation(g, r, sigma)
    assert sqr.poly == p3.poly * 2 ** len(sigma)


def test_decomposition_oracle():
    sigma = (1, 1)
    rows = decompose_sigma(sigma, z_max=8)
    taus = [t for t, _ in rows]
    assert sigma in taus
    # symbol evaluation agrees with the honest series
    lhs = sym_evaluate(sq_symbolic(sigma, Trunc({"z": 8})), 8)
    from tautring.fz import fz_symbolic, _sym_zero, _sym_add
    acc = _sym_zero()
    for tau, coeff in rows:
        acc = _sym_add(acc, {m: c * coeff for m, c in
                             fz_symbolic(tau, Trunc({"z": 8})).items()})
    assert sym_evaluate(acc, 8) == lhs


def test_lemma5_small():
    rep = lemma5_check(5, 5)
    assert rep["ok"], rep["detail"]
