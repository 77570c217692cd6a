"""Partitions, divisions into subpartitions, and their counting factors.

A partition is a tuple of parts sorted in weakly decreasing order.  A
division splits the multiset of parts into unordered nonempty blocks; a
marked division additionally singles out one (possibly empty) block.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .rationals import Rat, rat, factorial


def partition(parts) -> tuple:
    p = tuple(sorted(parts, reverse=True))
    if any(x < 1 for x in p):
        raise ValueError("parts must be positive")
    return p


def partitions(n: int, max_part=None, part_ok=None):
    """Partitions of n, graded-lex.  part_ok filters allowed part values."""
    if n < 0:
        return []
    out = []

    def rec(rem, cap, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rem, cap), 0, -1):
            if part_ok is not None and not part_ok(part):
                continue
            acc.append(part)
            rec(rem - part, part, acc)
            acc.pop()

    rec(n, max_part if max_part is not None else n, [])
    return out


def partitions_up_to(n: int, part_ok=None):
    """All partitions of sizes 0..n (the empty partition included)."""
    out = []
    for k in range(n + 1):
        out.extend(partitions(k, part_ok=part_ok))
    return out


def aut_order(sigma: tuple) -> int:
    """prod_i (multiplicity of i)!"""
    order = 1
    run = 1
    for j in range(1, len(sigma)):
        if sigma[j] == sigma[j - 1]:
            run += 1
        else:
            order *= factorial(run)
            run = 1
    if sigma:
        order *= factorial(run)
    return order


def _multiset_aut(blocks: tuple) -> int:
    """Order of the group permuting equal blocks."""
    return aut_order(blocks)  # same run-length computation works on any tuple


def _set_partitions(items):
    """All set partitions of a list of labels (blocks as tuples of labels)."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for k in range(len(rest) + 1):
        for chosen in combinations(range(len(rest)), k):
            block = (first,) + tuple(rest[i] for i in chosen)
            remaining = [rest[i] for i in range(len(rest)) if i not in chosen]
            for sub in _set_partitions(remaining):
                yield (block,) + sub


@lru_cache(maxsize=None)
def divisions(sigma: tuple):
    """Unordered divisions of sigma into nonempty subpartitions.

    Returned as sorted tuples of blocks (each block a partition tuple),
    with every distinct multiset of blocks appearing once.
    """
    labels = list(range(len(sigma)))
    seen = set()
    for sp in _set_partitions(labels):
        blocks = tuple(sorted(
            (partition(sigma[i] for i in blk) for blk in sp), reverse=True))
        seen.add(blocks)
    return sorted(seen, reverse=True)


def division_count(sigma: tuple, blocks: tuple) -> int:
    """Number of labeled set partitions of sigma's parts giving this block
    multiset.  Equals m_factor; kept as an independent computation."""
    labels = list(range(len(sigma)))
    count = 0
    for sp in _set_partitions(labels):
        got = tuple(sorted(
            (partition(sigma[i] for i in blk) for blk in sp), reverse=True))
        if got == blocks:
            count += 1
    return count


def m_factor(sigma: tuple, blocks: tuple) -> Rat:
    """m = |Aut(sigma)| / (|Aut(blocks-as-multiset)| * prod |Aut(block)|)."""
    denom = _multiset_aut(blocks)
    for blk in blocks:
        denom *= aut_order(blk)
    return rat(aut_order(sigma), denom)


def sub_multisets(sigma: tuple):
    """All sub-multisets of the parts of sigma (as partitions), with the
    empty one, each distinct value once."""
    seen = set()
    n = len(sigma)
    for k in range(n + 1):
        for chosen in combinations(range(n), k):
            seen.add(partition(sigma[i] for i in chosen))
    return sorted(seen, reverse=True)


def complement(sigma: tuple, sub: tuple) -> tuple:
    """Multiset difference sigma minus sub."""
    rest = list(sigma)
    for part in sub:
        rest.remove(part)
    return partition(rest)


def marked_divisions(sigma: tuple):
    """(marked_block, unmarked_blocks) pairs; the mark may be empty."""
    out = []
    for star in sub_multisets(sigma):
        rest = complement(sigma, star)
        if rest:
            for blocks in divisions(rest):
                out.append((star, blocks))
        else:
            out.append((star, ()))
    return out


def m_marked_factor(sigma: tuple, star: tuple, blocks: tuple) -> Rat:
    denom = _multiset_aut(blocks) * aut_order(star)
    for blk in blocks:
        denom *= aut_order(blk)
    return rat(aut_order(sigma), denom)


def m_pm_factor(sigma: tuple, star: tuple, blocks: tuple, sign: int) -> Rat:
    """(1 +- delta_{0,|star|}) times the marked factor; sign is +1 or -1."""
    m = m_marked_factor(sigma, star, blocks)
    if not star:
        m = m * (1 + sign)
    return m
