"""The relation family built from Theta(t,x) and the z_{i,j} operators.

Theta = sum_d prod_{i<=d} (1+it) * (-1)^d/d! * x^d/t^d, with the closed
form (1+x)^(-(t+1)/t).  The operator D = sum z_{i,j} t^j (x d/dx)^i acts
on Theta; coefficients of log(exp(D) Theta) drive the relations.

z-monomials are stored as sorted tuples of ((i, j), mult) with i >= 1 and
j >= i-1; their weights are l = sum i*mult and size = sum j*mult.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, Optional, Tuple

from .rationals import Rat, rat, factorial
from .series import (RING_K, RING_Q, Series, SeriesError, Trunc, bernoulli,
                     euler_op, mono, series_log, zvar)
from .kappa import KappaPoly, Relation
from .sq import exp_heavy_split

ZMono = Tuple[Tuple[Tuple[int, int], int], ...]


def zmono(pairs) -> ZMono:
    """Canonical z-monomial from {(i, j): mult}."""
    items = []
    for (i, j), mult in dict(pairs).items():
        if mult:
            zvar(i, j)  # validates the index pair
            items.append(((i, j), mult))
    return tuple(sorted(items))


def zm_ell(sigma: ZMono) -> int:
    return sum(i * mult for (i, _), mult in sigma)


def zm_size(sigma: ZMono) -> int:
    return sum(j * mult for (_, j), mult in sigma)


def zm_aut(sigma: ZMono) -> int:
    a = 1
    for _, mult in sigma:
        a *= factorial(mult)
    return a


def zm_exps(sigma: ZMono) -> Dict[str, int]:
    return {zvar(i, j): mult for (i, j), mult in sigma}


def theta_series(t_max: int, d_max: int) -> Series:
    """Theta truncated; the x^d slice carries a t-pole of order exactly d."""
    tr = Trunc({"t": t_max, "x": d_max}, laurent="t", lower=-d_max)
    out = {}
    for d in range(d_max + 1):
        # prod_{i=1}^d (1+it) as a polynomial in t
        prod = {0: rat(1)}
        for i in range(1, d + 1):
            nxt = dict(prod)
            for e, c in prod.items():
                nxt[e + 1] = nxt.get(e + 1, rat(0)) + c * i
            prod = nxt
        scale = rat((-1) ** d, factorial(d))
        for e, c in prod.items():
            if c and e - d <= t_max:
                out[mono({"t": e - d, "x": d})] = c * scale
    return Series(RING_Q, out, tr, _clean=True)


def theta_closed(t_max: int, d_max: int, sign: int = -1) -> Series:
    """(1+x)^(sign*(t+1)/t) by the binomial series, exactly in t."""
    tr = Trunc({"t": t_max, "x": d_max}, laurent="t", lower=-d_max)
    out = {(): rat(1)}
    # x^n coefficient: (1/n!) t^{-n} prod_{k=0}^{n-1} (sign*(1+t) - k*t)
    for n in range(1, d_max + 1):
        prod = {0: rat(1)}
        for k in range(n):
            nxt = {}
            for e, c in prod.items():
                nxt[e] = nxt.get(e, rat(0)) + c * sign
                nxt[e + 1] = nxt.get(e + 1, rat(0)) + c * (sign - k)
            prod = nxt
        for e, c in prod.items():
            if c and e - n <= t_max:
                out[mono({"t": e - n, "x": n})] = c / factorial(n)
    return Series(RING_Q, out, tr, _clean=True)


def log_theta_coeffs(d_max: int, r_max: int) -> Dict[Tuple[int, int], Rat]:
    """(d, r) -> C^r_d for the empty z-monomial: d! times the x^d t^r
    coefficient of log Theta = -(t+1)/t * log(1+x)."""
    table = {}
    for d in range(1, d_max + 1):
        base = rat((-1) ** d) * factorial(d - 1)
        table[(d, -1)] = base
        table[(d, 0)] = base
    return {k: v for k, v in table.items() if k[1] <= r_max}


def theta_d_series(z_bounds: Dict[Tuple[int, int], int], t_max: int,
                   d_max: int) -> Series:
    """exp(D) Theta from the closed expansion: the z^sigma part is
    t^{|sigma|}/|Aut| times (x d/dx)^{l(sigma)} Theta."""
    budget = sum(z_bounds.values())
    upper = {"t": t_max, "x": d_max}
    for (i, j), b in z_bounds.items():
        upper[zvar(i, j)] = b
    tr = Trunc(upper, laurent="t", lower=-d_max)
    theta = theta_series(t_max, d_max)
    ecache = {0: theta}

    def euler(ln):
        if ln not in ecache:
            ecache[ln] = euler_op(theta, "x", ln)
        return ecache[ln]

    out = {}
    for sigma in _z_multisets(z_bounds, budget):
        size, ell, aut = zm_size(sigma), zm_ell(sigma), zm_aut(sigma)
        zex = zm_exps(sigma)
        base = euler(ell)
        scale = rat(1, aut)
        for m, c in base.coeffs.items():
            e = dict(m)
            e["t"] = e.get("t", 0) + size
            if e["t"] > t_max:
                continue
            e.update(zex)
            out[mono(e)] = out.get(mono(e), rat(0)) + c * scale
    return Series(RING_Q, {m: c for m, c in out.items() if c}, tr,
                  _clean=True)


def theta_d_series_operator(z_bounds: Dict[Tuple[int, int], int], t_max: int,
                            d_max: int) -> Series:
    """exp(D) Theta by iterating D = sum z_{i,j} t^j (x d/dx)^i; the
    z-budget makes the exponential a finite sum.  Oracle for
    theta_d_series."""
    budget = sum(z_bounds.values())
    upper = {"t": t_max, "x": d_max}
    for (i, j), b in z_bounds.items():
        upper[zvar(i, j)] = b
    tr = Trunc(upper, laurent="t", lower=-d_max)
    cur = theta_series(t_max, d_max).with_trunc(tr)

    def apply_d(f: Series) -> Series:
        acc = Series.zero(RING_Q, tr)
        for (i, j), b in z_bounds.items():
            g = euler_op(f, "x", i)
            out = {}
            for m, c in g.coeffs.items():
                e = dict(m)
                e["t"] = e.get("t", 0) + j
                v = zvar(i, j)
                e[v] = e.get(v, 0) + 1
                key = mono(e)
                if tr.allows(key):
                    out[key] = c
            acc = acc + Series(RING_Q, out, tr)
        return acc

    total = cur
    term = cur
    for k in range(1, budget + 1):
        term = apply_d(term) / k
        if not term.coeffs:
            break
        total = total + term
    return total


def _z_multisets(z_bounds: Dict[Tuple[int, int], int], budget: int):
    keys = sorted(z_bounds)

    def rec(pos, left, acc):
        if pos == len(keys):
            yield tuple(acc)
            return
        k = keys[pos]
        for a in range(min(z_bounds[k], left) + 1):
            if a:
                acc.append((k, a))
            yield from rec(pos + 1, left - a, acc)
            if a:
                acc.pop()

    yield from rec(0, budget, [])


@lru_cache(maxsize=None)
def _log_theta_d_cached(z_items: tuple, d_max: int, r_max: int,
                        budget=None):
    z_bounds = dict(z_items)
    if budget is None:
        budget = sum(z_bounds.values())
    head = r_max + d_max
    big = head + d_max  # inv carries poles to t^{-d_max} in the ratio
    theta = theta_series(big, d_max)
    inv = theta_closed(big, d_max, sign=+1)

    ecache = {}

    def ratio(ln):
        # ((x d/dx)^l Theta) / Theta, clipped to the working truncation
        if ln not in ecache:
            prodtr = Trunc({"t": big, "x": d_max}, laurent="t",
                           lower=-2 * d_max)
            num = euler_op(theta, "x", ln).with_trunc(prodtr)
            ecache[ln] = (num * inv.with_trunc(prodtr)).with_trunc(
                Trunc({"t": head, "x": d_max}, laurent="t", lower=-d_max))
        return ecache[ln]

    # W = (Theta^D - Theta)/Theta, kept as per-z-monomial (t,x) slices so
    # that products never mix z variables into the series arithmetic
    txtr = Trunc({"t": head, "x": d_max}, laurent="t", lower=-d_max)
    wmap: Dict[ZMono, Series] = {}
    for sigma in _z_multisets(z_bounds, budget):
        if not sigma:
            continue
        size, ell, aut = zm_size(sigma), zm_ell(sigma), zm_aut(sigma)
        base = ratio(ell)
        out = {}
        for m, c in base.coeffs.items():
            e = dict(m)
            e["t"] = e.get("t", 0) + size
            if e["t"] > head:
                continue
            out[mono(e)] = c / aut
        wmap[sigma] = Series(RING_Q, out, txtr, _clean=True)

    # log(Theta^D) = log Theta + log(1 + W); the z-budget makes the log a
    # finite sum over multisets of W-slices
    logmap: Dict[ZMono, Series] = dict(wmap)
    keys = sorted(wmap)
    for k in range(2, budget + 1):
        for combo in combinations_with_replacement(keys, k):
            tot: Dict[Tuple[int, int], int] = {}
            for sig in combo:
                for pair, mult in sig:
                    tot[pair] = tot.get(pair, 0) + mult
            if any(tot[p] > z_bounds[p] for p in tot):
                continue
            if sum(tot.values()) > budget:
                continue
            arrangements = factorial(k)
            for mult in Counter(combo).values():
                arrangements //= factorial(mult)
            prod = wmap[combo[0]]
            for sig in combo[1:]:
                prod = prod * wmap[sig]
            target = zmono(tot)
            term = prod * rat((-1) ** (k - 1) * arrangements, k)
            cur = logmap.get(target)
            logmap[target] = term if cur is None else cur + term

    table: Dict[Tuple[ZMono, int, int], Rat] = {}
    for d in range(1, d_max + 1):
        base = rat((-1) ** d) * factorial(d - 1)
        for r in (-1, 0):
            table[((), d, r)] = base
    for sigma in sorted(logmap):
        for m, c in logmap[sigma].coeffs.items():
            e = dict(m)
            r = e.get("t", 0)
            d = e.get("x", 0)
            if d == 0:
                continue
            if r < -1:
                raise SeriesError("pole of order %d in log Theta^D at "
                                  "x^%d %r" % (-r, d, sigma))
            if r <= r_max:
                key = (sigma, d, r)
                val = table.get(key, rat(0)) + c * factorial(d)
                if val:
                    table[key] = val
                else:
                    table.pop(key, None)
    return {k: v for k, v in table.items() if v}


def theta_d_log_coeffs(z_bounds: Dict[Tuple[int, int], int], d_max: int,
                       r_max: int, budget=None
                       ) -> Dict[Tuple[ZMono, int, int], Rat]:
    """Table (sigma, d, r) -> C^r_d(sigma) from log(exp(D) Theta).

    Asserts the simple-pole property per (x, z) monomial.  Computed via
    log(Theta^D) = log Theta + log(1 + (Theta^D - Theta)/Theta) with the
    closed forms for log Theta and 1/Theta, with t-headroom d_max for the
    Laurent fold-down.
    """
    return _log_theta_d_cached(tuple(sorted(z_bounds.items())), d_max, r_max,
                               budget)


def thm1_relation(g: int, r: int, d: int, sigma: ZMono,
                  table=None) -> Optional[Relation]:
    """[exp(-gamma)]_{t^r x^d z^sigma} with kappa_{-1} dropped; None when
    the window (r > -g + |sigma|, d > 2g - 2) fails."""
    sigma = zmono(dict(sigma))
    size = zm_size(sigma)
    if not (r > -g + size and d > 2 * g - 2):
        return None
    if table is None:
        z_bounds = {pair: mult for pair, mult in sigma}
        table = theta_d_log_coeffs(z_bounds, d, r)
    upper = {"t": r, "x": d}
    for pair, mult in sigma:
        upper[zvar(*pair)] = mult
    tr = Trunc(upper, laurent="t", lower=0)
    out = {}

    def put(exps, idx, coeff):
        if not coeff or idx == -1:
            return
        m = mono(exps)
        cur = out.get(m)
        term = KappaPoly.kappa(idx, coeff)
        out[m] = term if cur is None else cur + term

    i = 1
    while 2 * i - 1 <= r:
        put({"t": 2 * i - 1}, 2 * i - 1,
            bernoulli(2 * i) / (2 * i * (2 * i - 1)))
        i += 1
    for (sig, dd, rr), c in table.items():
        if rr > r or dd > d:
            continue
        if any(dict(sigma).get(pair, 0) < mult for pair, mult in sig):
            continue
        exps = {"t": rr, "x": dd}
        exps.update({zvar(i2, j2): mult for (i2, j2), mult in sig})
        put(exps, rr, c / factorial(dd))
    gamma = Series(RING_K, out, tr)
    target = {"t": r, "x": d}
    target.update(zm_exps(sigma))
    poly = exp_heavy_split(-gamma).extract(target)
    return Relation(poly=poly, family="FABER", g=g, r=r, d=d,
                    sigma=sigma)
