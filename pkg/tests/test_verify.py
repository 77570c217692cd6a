import pytest

from tautring.series import SeriesError
from tautring import verify


def test_suite_names_dispatch():
    with pytest.raises(SeriesError):
        verify.run_suite("bogus")


def test_ionel_suite_small():
    rep = verify.suite_ionel(8)
    assert rep["ok"], [c for c in rep["checks"] if not c[1]]


def test_ode_suite_small():
    assert verify.suite_ode(16)["ok"]


def test_lemma5_suite_small():
    assert verify.suite_lemma5(5)["ok"]


def test_expanded_suite_small():
    rep = verify.suite_expanded(rmax=3, dmax=2, sigma_max=2)
    assert rep["ok"], [c for c in rep["checks"] if not c[1]]


def test_genus_shift_small():
    rep = verify.suite_genus_shift(gmax=6, rmax=3)
    assert rep["ok"], [c for c in rep["checks"] if not c[1]]


def test_triviality_small():
    rep = verify.suite_triviality(gmax=8, rmax=3, sigma_max=2)
    assert rep["ok"], [c for c in rep["checks"] if not c[1]]


def test_prop2_small():
    rep = verify.suite_prop2(sigma_max=2, rmax=3, dmax=2)
    assert rep["ok"], [c for c in rep["checks"] if not c[1]]


def test_worker_count_env(monkeypatch):
    monkeypatch.delenv("TAUTRING_THREADS", raising=False)
    assert verify.worker_count() == 1
    monkeypatch.setenv("TAUTRING_THREADS", "3")
    assert verify.worker_count() == 3
    monkeypatch.setenv("TAUTRING_THREADS", "-1")
    with pytest.raises(SeriesError):
        verify.worker_count()
