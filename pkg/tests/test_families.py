import pytest

from tautring.series import SeriesError
from tautring import families


def test_single_relation_dispatch():
    assert families.single_relation("sq2", 3, 2, 1).family == "SQ2"
    assert families.single_relation("fz", 3, 2).family == "FZ"
    assert families.single_relation("sq2", 5, 2, 1) is None


def test_single_relation_argument_checks():
    with pytest.raises(SeriesError):
        families.single_relation("sq2", 3, 2)          # missing d
    with pytest.raises(SeriesError):
        families.single_relation("prop3", 3, 2, d=1)   # spurious d
    with pytest.raises(SeriesError):
        families.single_relation("nope", 3, 2)


def test_sigma_range_covers_window():
    sigs = families.sigma_range("prop3", 3, 2)
    assert () in sigs and (1,) in sigs
    # fz enumeration never offers forbidden parts
    for sg in families.sigma_range("fz", 3, 3):
        assert all(p % 3 != 2 for p in sg)


def test_grid_relations_deterministic():
    a = families.grid_relations("prop3", 3, 2)
    b = families.grid_relations("prop3", 3, 2)
    assert [(r.sigma, r.d) for r in a] == [(r.sigma, r.d) for r in b]
    assert a


def test_span_report_self():
    rep = families.span_report(3, 2, "fz", "fz")
    assert rep["equal"] and rep["rank_a"] == rep["rank_b"]


def test_span_prop3_equals_fz():
    rep = families.span_report(5, 2, "prop3", "fz")
    assert rep["equal"]


def test_faber_z_multisets_budget():
    out = families.faber_z_multisets(2, 2)
    assert () in out
    assert all(sum(m for _, m in zm) <= 2 for zm in out)
