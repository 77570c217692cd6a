from tautring.rationals import rat
from tautring.partitions import (aut_order, complement, division_count,
                                 divisions, m_factor, partition, partitions,
                                 partitions_up_to, sub_multisets)


def test_partition_normalizes():
    assert partition([2, 1, 3]) == (3, 2, 1)
    assert partition(()) == ()


def test_partitions_count():
    # p(n) for n = 1..8
    counts = [len(list(partitions(n))) for n in range(1, 9)]
    assert counts == [1, 2, 3, 5, 7, 11, 15, 22]


def test_partitions_part_filter():
    odd = list(partitions(6, part_ok=lambda p: p % 2 == 1))
    assert all(all(x % 2 == 1 for x in sg) for sg in odd)
    assert len(odd) == 4  # 51, 33, 311, 111111


def test_partitions_up_to():
    got = set(partitions_up_to(3))
    assert got == {(), (1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1)}


def test_aut_order():
    assert aut_order(()) == 1
    assert aut_order((3, 2, 1)) == 1
    assert aut_order((2, 2, 1, 1, 1)) == 12


def test_divisions_of_triple():
    blocks = list(divisions((1, 1, 1)))
    # set partitions of three equal parts: 111, 11|1, 1|1|1
    assert len(blocks) == 3
    assert division_count((1, 1, 1), ((1,), (1,), (1,))) == 1
    assert division_count((1, 1, 1), ((1, 1), (1,))) == 3


def test_m_factor_weights():
    # m(sigma, blocks) = count * prod (-1)^{l} (l-1)! style weights stay
    # rational and nonzero for the full block
    w = m_factor((2, 1), ((2, 1),))
    assert w != 0
    assert w == rat(w)


def test_sub_multisets_and_complement():
    subs = set(sub_multisets((2, 1, 1)))
    assert (1, 1) in subs and (2,) in subs and () in subs
    assert complement((2, 1, 1), (1,)) == (2, 1)
    assert complement((2, 1, 1), (2, 1, 1)) == ()
