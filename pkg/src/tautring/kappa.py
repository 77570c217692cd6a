"""The graded polynomial ring Q[kappa_{-1}, kappa_0, kappa_1, ...].

deg kappa_i = i (so kappa_{-1} has degree -1 and kappa_0 degree 0).  The
standing conventions kappa_{-1} = 0 and kappa_0 = 2g - 2 are applied by
``subs_km1_zero`` and ``specialize_genus``; polynomials are stored fully
symbolic until then.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .rationals import Rat, rat, rat_str
from .series import Series, SeriesError, RING_K, mono, var_key

# A monomial is a sorted tuple of (index, multiplicity), indices >= -1.


def kmono(exps: dict) -> tuple:
    items = [(i, m) for i, m in exps.items() if m]
    for i, _ in items:
        if i < -1:
            raise SeriesError("kappa index < -1")
    return tuple(sorted(items))


def kmono_degree(m: tuple) -> int:
    return sum(i * mult for i, mult in m)


def kmono_str(m: tuple) -> str:
    if not m:
        return "1"
    return "".join("k%d" % i if mult == 1 else "k%d^%d" % (i, mult)
                   for i, mult in m)


class KappaPoly:
    """Sparse polynomial in the kappa classes with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None, _clean=False):
        if _clean:
            self.terms = terms
        else:
            self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls):
        return cls({}, _clean=True)

    @classmethod
    def const(cls, c):
        c = rat(c)
        return cls({(): c} if c else {}, _clean=True)

    @classmethod
    def kappa(cls, i: int, coeff=1):
        return cls({kmono({i: 1}): rat(coeff)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, KappaPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, KappaPoly):
            other = KappaPoly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            n = out.get(m)
            n = c if n is None else n + c
            if n:
                out[m] = n
            else:
                del out[m]
        return KappaPoly(out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return KappaPoly({m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-other if isinstance(other, KappaPoly)
                       else KappaPoly.const(-rat(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, KappaPoly):
            c = rat(other)
            if not c:
                return KappaPoly.zero()
            return KappaPoly({m: v * c for m, v in self.terms.items()},
                             _clean=True)
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _kmono_mul(ma, mb)
                v = ca * cb
                n = out.get(m)
                n = v if n is None else n + v
                if n:
                    out[m] = n
                else:
                    del out[m]
        return KappaPoly(out, _clean=True)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        inv = rat(1) / rat(scalar)
        return self * inv

    # -- structure ----------------------------------------------------

    def degrees(self):
        return {kmono_degree(m) for m in self.terms}

    def is_homogeneous(self, r: Optional[int] = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return r is None or degs == {r}

    def subs_km1_zero(self) -> "KappaPoly":
        """Apply kappa_{-1} = 0."""
        out = {m: c for m, c in self.terms.items()
               if not any(i == -1 for i, _ in m)}
        return KappaPoly(out, _clean=True)

    def specialize_genus(self, g: int) -> "KappaPoly":
        """Apply kappa_{-1} = 0 and kappa_0 = 2g - 2."""
        scale0 = rat(2 * g - 2)
        out = {}
        for m, c in self.terms.items():
            if any(i == -1 for i, _ in m):
                continue
            rest = []
            for i, mult in m:
                if i == 0:
                    c = c * scale0 ** mult
                else:
                    rest.append((i, mult))
            if not c:
                continue
            key = tuple(rest)
            n = out.get(key)
            n = c if n is None else n + c
            if n:
                out[key] = n
            else:
                del out[key]
        return KappaPoly(out, _clean=True)

    def eval_all_ones(self):
        """Substitute every kappa_i -> 1 (used by insertion round-trips)."""
        acc = rat(0)
        for _, c in self.terms.items():
            acc += c
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda m: (kmono_degree(m), m)):
            bits.append("(%s)*%s" % (rat_str(self.terms[m]), kmono_str(m)))
        return " + ".join(bits)


def _kmono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for i, mult in b:
        d[i] = d.get(i, 0) + mult
    return tuple(sorted(d.items()))


def specialize_genus(p: KappaPoly, g: int) -> KappaPoly:
    return p.specialize_genus(g)


def insert_kappa(f: Series, var: str, shift: int = 0) -> Series:
    """Turn c * var^r (times spectators) into c * kappa_{r+shift} * var^r.

    f must have rational coefficients; the result lives over the kappa ring.
    """
    if f.ring != "Q":
        raise SeriesError("insert_kappa expects rational coefficients")
    out = {}
    for m, c in f.coeffs.items():
        e = 0
        for v, k in m:
            if v == var:
                e = k
                break
        idx = e + shift
        if idx < -1:
            raise SeriesError("kappa index %d < -1 from exponent %d" % (idx, e))
        out[m] = KappaPoly.kappa(idx, c)
    return Series(RING_K, out, f.trunc, _clean=True)


# -- canonical degree-r basis and vectorization -----------------------

def kappa_partitions(r: int):
    """Partitions of r with parts >= 1, graded-lex order (deterministic)."""
    out = []

    def rec(rem, maxpart, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rem, maxpart), 0, -1):
            acc.append(part)
            rec(rem - part, part, acc)
            acc.pop()

    if r < 0:
        return []
    rec(r, r if r else 1, [])
    return sorted(out, key=lambda p: (len(p), tuple(-x for x in p)))


def basis_monomials(r: int):
    """kmono keys for the basis {kappa_sigma : sigma a partition of r}."""
    keys = []
    for parts in kappa_partitions(r):
        exps = {}
        for part in parts:
            exps[part] = exps.get(part, 0) + 1
        keys.append(kmono(exps))
    return keys


def vectorize(p: KappaPoly, r: int):
    """Coefficient vector over the canonical degree-r basis.

    Requires kappa_0 and kappa_{-1} already eliminated and p homogeneous
    of degree r.
    """
    if not p.is_homogeneous(r) and p:
        raise SeriesError("vectorize needs a homogeneous degree-%d input" % r)
    basis = basis_monomials(r)
    index = {m: i for i, m in enumerate(basis)}
    vec = [rat(0)] * len(basis)
    for m, c in p.terms.items():
        pos = index.get(m)
        if pos is None:
            raise SeriesError("monomial %s outside the degree-%d basis"
                              % (kmono_str(m), r))
        vec[pos] = c
    return vec


def poly_from_vector(vec, r: int) -> KappaPoly:
    basis = basis_monomials(r)
    return KappaPoly({m: rat(c) for m, c in zip(basis, vec)})


# -- relations --------------------------------------------------------

FAMILIES = ("FABER", "SQ2", "SQ3", "THM4", "PROP3", "FZ", "FZ_REINDEXED")


@dataclass(frozen=True)
class Relation:
    """A homogeneous degree-r kappa polynomial with its provenance."""

    poly: KappaPoly
    family: str
    g: int
    r: int
    d: Optional[int] = None
    sigma: tuple = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SeriesError("unknown family %r" % (self.family,))

    def specialized(self, g: Optional[int] = None) -> KappaPoly:
        return self.poly.specialize_genus(self.g if g is None else g)
