"""Grid enumeration of the relation families and span construction.

A "family" here is one of the CLI-level names; each maps to a constructor
over (g, r, d, sigma).  Span comparisons work degree by degree: the rows
for degree r include every kappa-monomial multiple of a lower-degree
relation of the same family, since the families are only claimed to agree
as ideals graded by degree.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .kappa import (KappaPoly, Relation, basis_monomials, kappa_partitions,
                    vectorize)
from .linalg import RelationMatrix
from .partitions import partition, partitions_up_to
from .series import SeriesError
from . import faber, fz, ionel, sq

FAMILY_NAMES = ("faber", "sq2", "sq3", "thm4", "prop3", "fz", "fz-reindexed")


def single_relation(family: str, g: int, r: int, d: Optional[int] = None,
                    sigma: tuple = ()) -> Optional[Relation]:
    """One relation instance; None when the applicability window fails."""
    if family == "faber":
        if d is None:
            raise SeriesError("family faber needs d")
        return faber.thm1_relation(g, r, d, sigma)
    if family == "sq2":
        if d is None:
            raise SeriesError("family sq2 needs d")
        if sigma:
            raise SeriesError("family sq2 takes no sigma")
        return sq.thm2_relation(g, r, d)
    if family == "sq3":
        if d is None:
            raise SeriesError("family sq3 needs d")
        return sq.thm3_relation(g, r, d, partition(sigma))
    if family == "thm4":
        if d is None:
            raise SeriesError("family thm4 needs d")
        return ionel.thm4_relation(g, r, d, partition(sigma))
    if d is not None:
        raise SeriesError("family %s takes no d" % family)
    if family == "prop3":
        return ionel.prop3_relation(g, r, partition(sigma))
    if family == "fz":
        return fz.thm5_relation(g, r, partition(sigma))
    if family == "fz-reindexed":
        return fz.fz_reindexed_relation(g, r, partition(sigma))
    raise SeriesError("unknown family %r" % (family,))


def faber_z_multisets(r: int, max_factors: int = 2):
    """z-monomials with at most max_factors factors z_{i,j}, i >= 1,
    i-1 <= j <= r.  Deterministic order."""
    pairs = [(i, j) for i in range(1, r + 2)
             for j in range(max(i - 1, 0), r + 1)]
    seen = {()}
    out = [()]
    level = [()]
    for _ in range(max_factors):
        nxt = []
        for base in level:
            counts = dict(base)
            for p in pairs:
                c2 = dict(counts)
                c2[p] = c2.get(p, 0) + 1
                key = tuple(sorted(c2.items()))
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
        out.extend(sorted(nxt))
        level = nxt
    return out


def d_range(family: str, g: int, r: int, size: int,
            d_cap: Optional[int] = None) -> range:
    """Default mapping-degree range for the d-indexed families."""
    if family == "faber":
        lo = max(2 * g - 1, 1)
        hi = d_cap if d_cap is not None else 2 * g
        return range(lo, hi + 1)
    hi = d_cap if d_cap is not None else (g + size + 1) // 2 + 1
    return range(1, hi + 1)


def sigma_range(family: str, g: int, r: int, d: Optional[int] = None,
                sigma_cap: Optional[int] = None) -> List[tuple]:
    """Candidate partitions for a cell; constructors still apply their own
    windows, so this only needs to cover every applicable sigma."""
    if family == "sq2":
        return [()]
    if family in ("sq3", "thm4"):
        # window: g - 2d - 1 + |sigma| < r
        cap = r + 2 * (d or 0) - g
        if sigma_cap is not None:
            cap = min(cap, sigma_cap)
        return list(partitions_up_to(max(cap, 0)))
    if family in ("prop3", "fz-reindexed"):
        # 3|s| - 2l(s) >= |s|, so the window 3r >= g+1+3|s|-2l(s) caps |s|
        cap = 3 * r - g - 1
        if sigma_cap is not None:
            cap = min(cap, sigma_cap)
        return list(partitions_up_to(max(cap, 0)))
    if family == "fz":
        cap = 3 * r - g
        if sigma_cap is not None:
            cap = min(cap, sigma_cap)
        return list(partitions_up_to(max(cap, 0),
                                     part_ok=lambda p: p % 3 != 2))
    raise SeriesError("no sigma enumeration for family %r" % (family,))


def grid_relations(family: str, g: int, r: int,
                   d_cap: Optional[int] = None,
                   sigma_cap: Optional[int] = None) -> List[Relation]:
    """Every applicable relation of the family in degree r at genus g,
    over the default desk grid.  Deterministic order."""
    out: List[Relation] = []
    if r < 1:
        return out
    if family == "faber":
        z_bounds = {(i, j): 2 for i in range(1, r + 2)
                    for j in range(max(i - 1, 0), r + 1)}
        for d in d_range(family, g, r, 0, d_cap):
            # one shared log table covers every z-monomial of the cell
            table = faber.theta_d_log_coeffs(z_bounds, d, r, budget=2)
            for zm in faber_z_multisets(r, 2):
                rel = faber.thm1_relation(g, r, d, zm, table=table)
                if rel is not None:
                    out.append(rel)
        return out
    if family in ("sq2", "sq3", "thm4"):
        cap = d_cap if d_cap is not None else (g + r + 1) // 2 + 1
        for d in range(1, cap + 1):
            for sg in sigma_range(family, g, r, d, sigma_cap):
                rel = single_relation(family, g, r, d, sg)
                if rel is not None:
                    out.append(rel)
        return out
    for sg in sigma_range(family, g, r, None, sigma_cap):
        rel = single_relation(family, g, r, None, sg)
        if rel is not None:
            out.append(rel)
    return out


def _rel_label(rel: Relation, mult=None) -> str:
    bits = [rel.family, "g=%d" % rel.g, "r=%d" % rel.r]
    if rel.d is not None:
        bits.append("d=%d" % rel.d)
    if rel.sigma:
        bits.append("sigma=%s" % (rel.sigma,))
    if mult:
        bits.append("times=%s" % (mult,))
    return " ".join(bits)


def span_matrix(family: str, g: int, r: int,
                d_cap: Optional[int] = None,
                sigma_cap: Optional[int] = None) -> RelationMatrix:
    """Degree-r rows of the ideal generated by the family at genus g:
    kappa-monomial multiples of relations in every degree r' <= r."""
    ncols = len(basis_monomials(r))
    mat = RelationMatrix(ncols)
    for rp in range(1, r + 1):
        rels = grid_relations(family, g, rp, d_cap, sigma_cap)
        if not rels:
            continue
        for mu in basis_monomials(r - rp):
            factor = KappaPoly({mu: 1}) if mu else None
            for rel in rels:
                p = rel.poly.specialize_genus(g)
                if factor is not None:
                    p = factor * p
                if not p:
                    continue
                mat.add_row(vectorize(p, r), _rel_label(rel, mu or None))
    return mat


def span_report(g: int, r: int, fam_a: str, fam_b: str,
                certify: bool = False) -> dict:
    """Ranks of both families in degree r plus mutual containment."""
    ma = span_matrix(fam_a, g, r)
    mb = span_matrix(fam_b, g, r)

    def contained(src: RelationMatrix, dst: RelationMatrix):
        misses = []
        certs = []
        for row, label in zip(src.rows, src.labels):
            ok, coeffs = dst.span_contains(row)
            if not ok:
                misses.append(label)
            elif certify:
                certs.append((label, coeffs))
        return not misses, misses, certs

    a_in_b, miss_ab, cert_ab = contained(ma, mb)
    b_in_a, miss_ba, cert_ba = contained(mb, ma)
    return {"g": g, "r": r, "a": fam_a, "b": fam_b,
            "rank_a": ma.rank(), "rank_b": mb.rank(),
            "rows_a": len(ma.rows), "rows_b": len(mb.rows),
            "a_in_b": a_in_b, "b_in_a": b_in_a,
            "equal": a_in_b and b_in_a,
            "missing_a_in_b": miss_ab, "missing_b_in_a": miss_ba,
            "certificates": {"a_in_b": cert_ab, "b_in_a": cert_ba}}
