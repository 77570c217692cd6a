"""Exact rational scalars.

gmpy2.mpq is used when available (much faster for the big verification
grids); fractions.Fraction is a drop-in fallback.  Everything downstream
goes through ``rat`` / ``is_rat`` so the choice stays local to this module.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rat

ZERO = Rat(0)
ONE = Rat(1)


def rat(num, den=1):
    """Exact rational num/den."""
    return Rat(num, den)


def is_rat(value) -> bool:
    return isinstance(value, (type(ZERO), int))


def rat_str(value) -> str:
    """Render as "num/den" (or "num" for integers)."""
    return str(value)


def parse_rat(text: str):
    if "/" in text:
        num, den = text.split("/")
        return Rat(int(num), int(den))
    return Rat(int(text))


def factorial(n: int):
    f = 1
    for i in range(2, n + 1):
        f *= i
    return f


def binomial(n: int, k: int):
    if k < 0 or k > n:
        return 0
    num = 1
    for i in range(k):
        num = num * (n - i) // (i + 1)
    return num
