"""Relation families built from the series Phi(t,x).

Phi = sum_d prod_{i<=d} 1/(1-it) * (-1)^d/d! * x^d/t^d.  Its logarithm has
at most simple poles in t per x-degree; the coefficient table C^r_d feeds
the gamma series whose exponentials produce the relations.

The kappa_{-1} terms of gamma sit exactly on the negative t-exponents, so
dropping them (they are killed at the end anyway, and the kappa classes
enter gamma linearly) keeps every series over t >= 0.  The keep_km1 flag
retains them for cross-checks.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct
from typing import Dict, Optional, Tuple

from .rationals import Rat, rat, factorial
from .series import (RING_K, RING_Q, Series, SeriesError, Trunc, bernoulli,
                     euler_op, mono, pvar, series_exp, series_log)
from .kappa import KappaPoly, Relation
from .partitions import (aut_order, complement, marked_divisions,
                         m_pm_factor, sub_multisets)
from . import linalg

FLAVORS = ("plain", "p_enriched", "p_enriched_hat")


def phi_series(t_max: int, d_max: int) -> Series:
    """Phi truncated to t^t_max, x^d_max; the x^d slice has a t^{-d} pole."""
    tr = Trunc({"t": t_max, "x": d_max}, laurent="t", lower=-d_max)
    out = {}
    for d in range(d_max + 1):
        # prod_{i=1}^d 1/(1-it), expanded to t^(t_max+d)
        prod = {0: rat(1)}
        for i in range(1, d + 1):
            nxt = {}
            for e, c in prod.items():
                term = c
                for k in range(e, t_max + d + 1):
                    nxt[k] = nxt.get(k, rat(0)) + term
                    term = term * i
            prod = nxt
        scale = rat((-1) ** d, factorial(d))
        for e, c in prod.items():
            if c and e - d <= t_max:
                m = mono({"t": e - d, "x": d})
                out[m] = out.get(m, rat(0)) + c * scale
    return Series(RING_Q, {m: c for m, c in out.items() if c}, tr,
                  _clean=True)


@lru_cache(maxsize=None)
def log_phi_coeffs(d_max: int, r_max: int) -> Dict[Tuple[int, int], Rat]:
    """Table (d, r) -> C^r_d from log Phi = sum C^r_d t^r x^d/d!.

    Asserts the simple-pole property: no r < -1 appears.

    Phi is expanded with t-headroom d_max above r_max: coefficients at t^r
    receive contributions from terms up to t^(r+d-1) paired against poles,
    so clipping at r_max would corrupt the top rows of the table.
    """
    lg = series_log(phi_series(r_max + d_max, d_max))
    table = {}
    for m, c in lg.coeffs.items():
        e = dict(m)
        r, d = e.get("t", 0), e.get("x", 0)
        if d == 0:
            continue
        if r < -1:
            raise SeriesError("pole of order %d at x^%d in log Phi" % (-r, d))
        if r <= r_max:
            table[(d, r)] = c * factorial(d)
    return table


def _sigma_multisets(p_mults: Dict[int, int]):
    """All multisets over the allowed p-indices, as (part, mult) tuples."""
    parts = sorted(p_mults)
    for mults in iproduct(*(range(p_mults[i] + 1) for i in parts)):
        yield tuple((i, a) for i, a in zip(parts, mults) if a)


def sq_gamma(t_max: int, d_max: int, flavor: str = "plain",
             p_mults: Optional[Dict[int, int]] = None,
             keep_km1: bool = True) -> Series:
    """The gamma series over the kappa ring.

    plain:          Bernoulli part + sum C^r_d kappa_r t^r x^d/d!
    p_enriched:     kappa_{r+|s|} t^{r+|s|} with d^{l(s)} p^s/|Aut| factors
    p_enriched_hat: the same with t -> -t in the C- and Bernoulli parts
                    (the t^{|s|} carried by the p-monomials keeps its sign)
    """
    if flavor not in FLAVORS:
        raise SeriesError("unknown gamma flavor %r" % (flavor,))
    if flavor == "plain":
        p_mults = None
    upper = {"t": t_max, "x": d_max}
    budget = 0
    for i, a in (p_mults or {}).items():
        upper[pvar(i)] = a
        budget += a
    lower = -(d_max + budget) if keep_km1 else 0
    tr = Trunc(upper, laurent="t", lower=lower)
    hat = flavor == "p_enriched_hat"
    out = {}

    def put(exps, idx, coeff):
        if not coeff:
            return
        if idx == -1 and not keep_km1:
            return
        m = mono(exps)
        cur = out.get(m)
        term = KappaPoly.kappa(idx, coeff)
        out[m] = term if cur is None else cur + term

    sign = rat(-1) if hat else rat(1)
    i = 1
    while 2 * i - 1 <= t_max:
        put({"t": 2 * i - 1}, 2 * i - 1,
            sign * bernoulli(2 * i) / (2 * i * (2 * i - 1)))
        i += 1

    table = log_phi_coeffs(d_max, t_max)
    if flavor == "plain":
        sigmas = [()]
    else:
        sigmas = list(_sigma_multisets(p_mults or {}))
    for sigma in sigmas:
        size = sum(i * a for i, a in sigma)
        length = sum(a for _, a in sigma)
        aut = 1
        for _, a in sigma:
            aut *= factorial(a)
        pexps = {pvar(i): a for i, a in sigma}
        for (d, r), c in table.items():
            texp = r + size
            if texp > t_max or texp < lower:
                continue
            coeff = c * rat(d ** length, factorial(d) * aut)
            if hat and r % 2:
                coeff = -coeff
            exps = dict(pexps)
            exps["t"] = texp
            exps["x"] = d
            put(exps, r + size, coeff)
    return Series(RING_K, out, tr)


def _heavy(m) -> bool:
    # p_i and z_{i,j} variables; the plain variable "z" is not heavy
    return any(v[0] == "p" or (v[0] == "z" and len(v) > 1) for v, _ in m)


def exp_heavy_split(f: Series) -> Series:
    """exp(f) where monomials carrying p/z variables are nilpotent under
    the truncation: exp of the rest by the graded recursion, then a
    finite sum over powers of the nilpotent part."""
    f0 = Series(f.ring, {m: c for m, c in f.coeffs.items() if not _heavy(m)},
                f.trunc, _clean=True)
    f1 = Series(f.ring, {m: c for m, c in f.coeffs.items() if _heavy(m)},
                f.trunc, _clean=True)
    acc = series_exp(f0)
    if not f1.coeffs:
        return acc
    total = acc
    power = acc  # exp(f0) * f1^k / k!, built up incrementally
    k = 1
    while True:
        power = (power * f1) / k
        if not power.coeffs:
            break
        total = total + power
        k += 1
    return total


def thm2_relation(g: int, r: int, d: int) -> Optional[Relation]:
    """[exp(-gamma)]_{t^r x^d}; None when the applicability window
    (g - 2d - 1 < r, g = r+1 mod 2) fails."""
    if not (g - 2 * d - 1 < r and (g - r - 1) % 2 == 0):
        return None
    gamma = sq_gamma(r, d, "plain", keep_km1=False)
    e = series_exp(-gamma)
    poly = e.extract({"t": r, "x": d})
    return Relation(poly=poly, family="SQ2", g=g, r=r, d=d)


def thm3_relation(g: int, r: int, d: int, sigma: tuple
                  ) -> Optional[Relation]:
    """LHS - RHS of the p-enriched relation at t^r x^d p^sigma."""
    size = sum(sigma)
    if not g - 2 * d - 1 + size < r:
        return None
    p_mults: Dict[int, int] = {}
    for part in sigma:
        p_mults[part] = p_mults.get(part, 0) + 1
    target = {"t": r, "x": d}
    for i, a in p_mults.items():
        target[pvar(i)] = a

    gp = sq_gamma(r, d, "p_enriched", p_mults, keep_km1=False)
    lhs = exp_heavy_split(-gp).extract(target)

    gh = sq_gamma(r, d, "p_enriched_hat", p_mults, keep_km1=False)
    pref = {}
    for i in p_mults:
        if i - 1 > r:
            continue
        pref[mono({pvar(i): 1, "t": i - 1})] = KappaPoly.kappa(i - 1, rat(1))
    prefactor = Series(RING_K, pref, gh.trunc)
    rhs = exp_heavy_split(-(gh + prefactor)).extract(target)
    if g % 2:
        rhs = -rhs
    return Relation(poly=lhs - rhs, family="SQ3", g=g, r=r, d=d, sigma=sigma)


def f_series(n: int, m: int, t_max: int, d_max: int) -> Series:
    """F_{n,m} = -sum C^s_d kappa_{s+m} t^{s+m} d^n x^d/d!  (n, m >= 1)."""
    if n < 1 or m < 1:
        raise SeriesError("f_series needs n, m >= 1")
    tr = Trunc({"t": t_max, "x": d_max}, laurent="t", lower=0)
    table = log_phi_coeffs(d_max, max(t_max - m, -1) + 1)
    out = {}
    for (d, s), c in table.items():
        e = s + m
        if e > t_max:
            continue
        coeff = -c * rat(d ** n, factorial(d))
        key = mono({"t": e, "x": d})
        cur = out.get(key)
        term = KappaPoly.kappa(e, coeff)
        out[key] = term if cur is None else cur + term
    return Series(RING_K, out, tr)


def f_series_operator(n: int, m: int, t_max: int, d_max: int) -> Series:
    """F_{n,m} via -t^m (x d/dx)^n applied to the kappa-inserted log table;
    must agree with the direct construction."""
    tr = Trunc({"t": t_max, "x": d_max}, laurent="t", lower=-1)
    table = log_phi_coeffs(d_max, max(t_max - m, -1) + 1)
    out = {}
    for (d, s), c in table.items():
        if s > t_max - m:
            continue
        key = mono({"t": s, "x": d})
        cur = out.get(key)
        term = KappaPoly.kappa(s + m, c / factorial(d))
        out[key] = term if cur is None else cur + term
    inner = euler_op(Series(RING_K, out, tr), "x", n)
    shifted = {}
    for mo, c in inner.coeffs.items():
        e = dict(mo)
        e["t"] = e.get("t", 0) + m
        shifted[mono(e)] = -c
    return Series(RING_K, shifted,
                  Trunc({"t": t_max, "x": d_max}, laurent="t", lower=0))


def expanded_relation(g: int, r: int, d: int, sigma: tuple,
                      parity: str) -> Relation:
    """The marked-division expansion over exp(-gamma), normalized so the
    result equals |Aut(sigma)| times the direct thm3 extraction.

    parity "minus" is the g = r+|sigma| mod 2 case (weights m^-),
    "plus" the g = r+|sigma|+1 case (weights m^+).
    """
    if parity not in ("minus", "plus"):
        raise SeriesError("parity must be minus or plus")
    sgn = -1 if parity == "minus" else 1
    tr = Trunc({"t": r, "x": d}, laurent="t", lower=0)
    gamma = sq_gamma(r, d, "plain", keep_km1=False)
    e = series_exp(-gamma)

    fcache: Dict[Tuple[int, int], Series] = {}

    def fnm(n, mm):
        if (n, mm) not in fcache:
            fcache[(n, mm)] = f_series(n, mm, r, d)
        return fcache[(n, mm)]

    total = Series.zero(RING_K, tr)
    for star, blocks in marked_divisions(sigma):
        w = m_pm_factor(sigma, star, blocks, sgn)
        if not w:
            continue
        kap = KappaPoly.const(w)
        texp = 0
        for part in star:
            kap = kap * KappaPoly.kappa(part - 1)
            texp += part - 1
        if texp > r:
            continue
        term = Series(RING_K, {mono({"t": texp}): kap}, tr)
        for blk in blocks:
            term = term * fnm(len(blk), sum(blk))
        total = total + term
    poly = (e * total).extract({"t": r, "x": d})
    if sgn < 0:
        poly = -poly
    return Relation(poly=poly, family="SQ3", g=g, r=r, d=d, sigma=sigma)


def prop2_check(g: int, r: int, d: int, sigma: tuple) -> dict:
    """Express the minus-parity relation for sigma as a kappa-monomial
    combination of plus-parity relations of strictly smaller partitions.

    Candidates multiply the plus relation of sigma minus a sub-multiset
    sigma* (odd length, to preserve parity) by prod kappa_{sigma*_j - 1}.
    """
    if sigma == ():
        return {"ok": True, "sigma": sigma, "combination": [], "note": "empty"}
    if (g - r - sum(sigma)) % 2:
        raise SeriesError("minus case needs g = r + |sigma| mod 2")
    target = expanded_relation(g, r, d, sigma, "minus").poly
    cands = []
    for star in sub_multisets(sigma):
        if not star or len(star) % 2 == 0:
            continue
        r2 = r - sum(star) + len(star)
        if r2 < 0:
            continue
        rest = complement(sigma, star)
        kap = KappaPoly.const(rat(1))
        for part in star:
            kap = kap * KappaPoly.kappa(part - 1)
        plus = expanded_relation(g, r2, d, rest, "plus").poly
        cands.append((star, kap * plus))

    keys = sorted({m for p in [target] + [p for _, p in cands]
                   for m in p.terms})
    index = {m: i for i, m in enumerate(keys)}

    def vec(p):
        v = [rat(0)] * len(keys)
        for m, c in p.terms.items():
            v[index[m]] = c
        return v

    ok, coeffs = linalg.span_contains([vec(p) for _, p in cands], vec(target))
    combo = []
    if ok:
        combo = [(cands[i][0], coeffs[i]) for i in range(len(cands))
                 if coeffs[i]]
    return {"ok": ok, "sigma": sigma, "g": g, "r": r, "d": d,
            "combination": combo}
