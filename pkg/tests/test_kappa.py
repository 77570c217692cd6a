import pytest

from tautring.rationals import rat
from tautring.series import RING_Q, Series, SeriesError, Trunc, mono
from tautring.kappa import (KappaPoly, Relation, basis_monomials, insert_kappa,
                            kappa_partitions, kmono, kmono_degree,
                            poly_from_vector, vectorize)


def test_kmono_and_degree():
    m = kmono({2: 1, 1: 3})
    assert kmono_degree(m) == 5
    assert kmono_degree(kmono({0: 4})) == 0
    with pytest.raises(SeriesError):
        kmono({-2: 1})


def test_poly_arithmetic():
    p = KappaPoly.kappa(1) * KappaPoly.kappa(1) - KappaPoly.kappa(2) * 2
    assert p.is_homogeneous(2)
    assert (p - p) == 0
    assert (-p) + p == 0
    assert p / 2 + p / 2 == p


def test_specialize_genus():
    p = KappaPoly.kappa(0) * KappaPoly.kappa(1) + KappaPoly.kappa(-1)
    q = p.specialize_genus(3)
    assert q == KappaPoly.kappa(1, 4)
    assert p.subs_km1_zero() == KappaPoly.kappa(0) * KappaPoly.kappa(1)


def test_kappa_partitions_graded_lex():
    assert kappa_partitions(3) == [(3,), (2, 1), (1, 1, 1)]
    assert kappa_partitions(0) == [()]
    assert len(kappa_partitions(6)) == 11


def test_vectorize_roundtrip():
    p = (KappaPoly.kappa(3, rat(2, 7))
         + KappaPoly.kappa(2) * KappaPoly.kappa(1) * rat(-5))
    vec = vectorize(p, 3)
    assert poly_from_vector(vec, 3) == p
    assert len(vec) == len(basis_monomials(3))


def test_vectorize_rejects_inhomogeneous():
    p = KappaPoly.kappa(1) + KappaPoly.kappa(2)
    with pytest.raises(SeriesError):
        vectorize(p, 2)


def test_insert_kappa():
    tr = Trunc({"z": 4})
    f = Series(RING_Q, {mono({"z": 2}): rat(3), mono({}): rat(1)}, tr)
    g = insert_kappa(f, "z")
    assert g.extract({"z": 2}) == KappaPoly.kappa(2, 3)
    assert g.extract({}) == KappaPoly.kappa(0, 1)


def test_relation_family_validation():
    with pytest.raises(SeriesError):
        Relation(poly=KappaPoly.zero(), family="NOPE", g=2, r=1)
