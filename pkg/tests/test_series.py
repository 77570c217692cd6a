import pytest

from tautring.rationals import rat
from tautring.series import (RING_Q, Series, SeriesError, Trunc,
                             arcsin_series, bernoulli, binomial_power, deriv,
                             euler_op, geometric_sum, mono, series_compose,
                             series_exp, series_inverse, series_log,
                             sin_series)


def xser(coeffs, upper=8):
    tr = Trunc({"x": upper})
    return Series(RING_Q, {mono({"x": e}): rat(c) for e, c in coeffs.items()},
                  tr)


def test_trunc_filters_on_construction():
    s = xser({3: 1, 12: 7})
    assert mono({"x": 12}) not in s.coeffs


def test_exp_log_roundtrip():
    f = xser({1: 1, 2: rat(-3, 5), 4: 2})
    assert series_log(series_exp(f)) == f


def test_log_exp_roundtrip():
    f = xser({0: 1, 1: 2, 3: rat(1, 7)})
    assert series_exp(series_log(f)) == f


def test_inverse():
    f = xser({0: 1, 1: -1})
    inv = series_inverse(f)
    # 1/(1-x) = geometric series
    assert inv == geometric_sum("x", 1, f.trunc)


def test_exp_needs_zero_constant_term():
    with pytest.raises(SeriesError):
        series_exp(xser({0: 1, 1: 1}))


def test_euler_and_deriv():
    f = xser({2: 5, 3: 1})
    assert euler_op(f, "x") == xser({2: 10, 3: 3})
    assert deriv(f, "x") == xser({1: 10, 2: 3}, upper=7)


def test_compose_sin_arcsin():
    tr = Trunc({"t": 9})
    s = series_compose(sin_series("t", tr), arcsin_series("t", tr))
    assert s == Series.monomial(RING_Q, {"t": 1}, rat(1), tr)


def test_binomial_power_square():
    tr = Trunc({"y": 6})
    half = binomial_power("y", 1, tr)  # (1+4y)^{1/2}
    lin = binomial_power("y", 2, tr)   # 1+4y
    assert half * half == lin


def test_laurent_lower_bound():
    tr = Trunc({"t": 3}, laurent="t", lower=-2)
    s = Series(RING_Q, {mono({"t": -2}): rat(1)}, tr)
    assert s.extract({"t": -2}) == 1
    assert not tr.allows(mono({"t": -3}))
    assert not Trunc({"t": 3}, laurent="x", lower=-1).allows(mono({"t": -1}))


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == rat(-1, 2)
    assert bernoulli(2) == rat(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(12) == rat(-691, 2730)
