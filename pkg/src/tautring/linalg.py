"""Exact linear algebra over the rationals for relation bookkeeping.

Rows are coefficient vectors of relations over a fixed monomial basis.
Rank uses fraction-free (Bareiss) elimination on integer-scaled rows;
span membership produces explicit rational certificates.
"""

from __future__ import annotations

from math import gcd
from typing import List, Optional, Sequence, Tuple

from .rationals import Rat, rat


def _row_to_ints(row) -> List[int]:
    """Scale a rational row to integers (row scaling preserves rank/span)."""
    den = 1
    for c in row:
        q = rat(c)
        d = q.denominator
        den = den * d // gcd(den, d)
    out = []
    for c in row:
        q = rat(c) * den
        out.append(int(q))
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank via Bareiss elimination."""
    m = [_row_to_ints(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    prev = 1
    rk = 0
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        p = m[row][col]
        for i in range(row + 1, len(m)):
            for j in range(col + 1, ncols):
                m[i][j] = (p * m[i][j] - m[i][col] * m[row][j]) // prev
            m[i][col] = 0
        prev = p
        rk += 1
        row += 1
        if row == len(m):
            break
    return rk


def solve_combination(rows: Sequence[Sequence], v: Sequence
                      ) -> Optional[List[Rat]]:
    """Coefficients c with sum c_i * rows_i = v, or None.

    Free variables are set to 0; certificates are deterministic.
    """
    nrows = len(rows)
    ncols = len(v)
    if nrows == 0:
        return [] if not any(v) else None
    # Augmented system: columns of the basis are equations, unknowns c_i.
    aug = [[rat(rows[i][j]) for i in range(nrows)] + [rat(v[j])]
           for j in range(ncols)]
    pivots = []
    prow = 0
    for col in range(nrows):
        piv = None
        for i in range(prow, ncols):
            if aug[i][col]:
                piv = i
                break
        if piv is None:
            continue
        aug[prow], aug[piv] = aug[piv], aug[prow]
        inv = rat(1) / aug[prow][col]
        aug[prow] = [x * inv for x in aug[prow]]
        for i in range(ncols):
            if i != prow and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[prow])]
        pivots.append(col)
        prow += 1
    for i in range(prow, ncols):
        if aug[i][nrows]:
            return None
    sol = [rat(0)] * nrows
    for i, col in enumerate(pivots):
        sol[col] = aug[i][nrows]
    return sol


class RelationMatrix:
    """Rows of exact relation vectors with provenance labels."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: List[List[Rat]] = []
        self.labels: List[object] = []

    def add_row(self, row, label=None):
        row = [rat(c) for c in row]
        if len(row) != self.ncols:
            raise ValueError("row length %d != %d" % (len(row), self.ncols))
        self.rows.append(row)
        self.labels.append(label)

    def rank(self) -> int:
        return rank(self.rows)

    def span_contains(self, v) -> Tuple[bool, Optional[List[Rat]]]:
        v = [rat(c) for c in v]
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        sol = solve_combination(self.rows, v)
        if sol is None:
            return False, None
        return True, sol


def span_contains(rows, v) -> Tuple[bool, Optional[List[Rat]]]:
    sol = solve_combination(list(rows), list(v))
    return (sol is not None), sol


def span_equal(rows_a, rows_b) -> bool:
    """Mutual containment of two row spans over the same basis."""
    rows_a = [list(r) for r in rows_a]
    rows_b = [list(r) for r in rows_b]
    ra = rank(rows_a)
    rb = rank(rows_b)
    if ra != rb:
        return False
    return rank(rows_a + rows_b) == ra
