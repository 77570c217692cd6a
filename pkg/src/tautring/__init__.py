"""Exact constructors and verifiers for kappa-class relation families.

The package builds the relation families over the rationals as honest
truncated series computations, exposes them through one Relation type,
and checks the internal identities tying the families together.
"""

from .rationals import Rat, rat, rat_str, parse_rat
from .series import Series, SeriesError, Trunc
from .kappa import KappaPoly, Relation, kappa_partitions, vectorize
from .linalg import RelationMatrix, rank, span_contains, span_equal

__version__ = "1.0.0"

__all__ = [
    "Rat", "rat", "rat_str", "parse_rat",
    "Series", "SeriesError", "Trunc",
    "KappaPoly", "Relation", "kappa_partitions", "vectorize",
    "RelationMatrix", "rank", "span_contains", "span_equal",
    "__version__",
]
