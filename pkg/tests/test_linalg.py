from tautring.rationals import rat
from tautring.linalg import (RelationMatrix, rank, span_contains, span_equal)


def test_rank_basic():
    assert rank([]) == 0
    assert rank([[rat(0), rat(0)]]) == 0
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[rat(1, 2), rat(1, 3)], [rat(1, 4), rat(1, 6)]]) == 1


def test_span_contains_certificate():
    rows = [[rat(1), rat(0), rat(2)], [rat(0), rat(1), rat(-1)]]
    v = [rat(3), rat(-2), rat(8)]
    ok, coeffs = span_contains(rows, v)
    assert ok
    # certificate reproduces v exactly
    got = [sum(c * row[j] for c, row in zip(coeffs, rows))
           for j in range(3)]
    assert got == v


def test_span_contains_negative():
    rows = [[rat(1), rat(0)]]
    ok, coeffs = span_contains(rows, [rat(0), rat(1)])
    assert not ok and coeffs is None


def test_span_equal():
    a = [[rat(1), rat(1)], [rat(1), rat(-1)]]
    b = [[rat(2), rat(0)], [rat(0), rat(3)]]
    assert span_equal(a, b)
    assert not span_equal(a, [[rat(1), rat(0)]])


def test_relation_matrix_labels():
    m = RelationMatrix(2)
    m.add_row([rat(1), rat(2)], label="first")
    assert m.rank() == 1
    ok, coeffs = m.span_contains([rat(2), rat(4)])
    assert ok and coeffs == [rat(2)]
