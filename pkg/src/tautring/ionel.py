"""The (u, y) change of variables and the recursions feeding it.

Gamma = -t(sum B_{2i}/(2i(2i-1)) t^{2i-1} + log Phi) satisfies
tx Gamma_xx = x(Gamma_x)^2 + (1-t)Gamma_x - 1, and its closed form is
controlled by the integer table q_{k,j} and the rational table c_{k,j}.
Everything downstream (G_{n,m}, H_{n,m}, the relations with the
(1+4y)-prefactor) is assembled from these tables.

Conventions: u = t/sqrt(1+4x), y = -x/(1+4x); half-integer powers of
(1+4y) only ever appear through binomial_power.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct
from typing import Dict, Optional, Tuple

from .rationals import Rat, rat, factorial
from .series import (RING_K, RING_Q, Series, SeriesError, Trunc, bernoulli,
                     binomial_power, deriv, euler_op, mono, pvar,
                     series_compose, series_exp)
from .kappa import KappaPoly, Relation
from .partitions import divisions
from .sq import exp_heavy_split, log_phi_coeffs


def df_odd(n: int) -> int:
    """Double factorial of an odd integer, with (-1)!! = 1, (-3)!! = -1."""
    if n == -3:
        return -1
    if n == -1 or n == 1:
        return 1
    if n < -3 or n % 2 == 0:
        raise ValueError("df_odd needs odd n >= -3")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@lru_cache(maxsize=None)
def q_table(K: int) -> Dict[Tuple[int, int], int]:
    """q_{k,j} for 0 <= j <= k <= K by the double recursion."""
    q = {(0, 0): 1}

    def get(k, j):
        if k < 0 or j < 0 or j > k:
            return 0
        return q.get((k, j), 0)

    for k in range(1, K + 1):
        for j in range(k + 1):
            val = (2 * k + 4 * j - 2) * get(k - 1, j - 1) \
                + (j + 1) * get(k - 1, j)
            for m in range(k):
                for l in range(j):
                    val += get(m, l) * get(k - 1 - m, j - 1 - l)
            q[(k, j)] = val
    return q


@lru_cache(maxsize=None)
def c_table(K: int) -> Dict[Tuple[int, int], Rat]:
    """c_{k,j} solved downward in j from c_{k,k+1} = 0 via
    q_{k,j} = (2k+4j)c_{k,j} + (j+1)c_{k,j+1}."""
    q = q_table(K)
    c: Dict[Tuple[int, int], Rat] = {}
    for k in range(1, K + 1):
        c[(k, k + 1)] = rat(0)
        for j in range(k, -1, -1):
            c[(k, j)] = (rat(q[(k, j)]) - (j + 1) * c[(k, j + 1)]) \
                / (2 * k + 4 * j)
    return {kj: v for kj, v in c.items() if kj[1] <= kj[0]}


def gamma_series(t_max: int, d_max: int) -> Series:
    """Gamma = -t(Bernoulli tail + log Phi), a power series in t and x."""
    tr = Trunc({"t": t_max, "x": d_max})
    table = log_phi_coeffs(d_max, t_max - 1) if t_max >= 1 else {}
    out = {}
    i = 1
    while 2 * i <= t_max:
        out[mono({"t": 2 * i})] = -bernoulli(2 * i) / (2 * i * (2 * i - 1))
        i += 1
    for (d, r), c in table.items():
        if r + 1 > t_max:
            continue
        key = mono({"t": r + 1, "x": d})
        out[key] = out.get(key, rat(0)) - c / factorial(d)
    return Series(RING_Q, {m: c for m, c in out.items() if c}, tr,
                  _clean=True)


def sqrt_1p4x(d_max: int, half: int = 1) -> Series:
    return binomial_power("x", half, Trunc({"x": d_max}))


def _x_shift_down(f: Series) -> Series:
    """Divide by x a series with no x-free terms."""
    out = {}
    for m, c in f.coeffs.items():
        e = dict(m)
        k = e.get("x", 0)
        if k < 1:
            raise SeriesError("x-free term in _x_shift_down")
        e["x"] = k - 1
        out[mono(e)] = c
    return Series(f.ring, out, f.trunc, _clean=True)


def _log_1p4x(d_max: int) -> Series:
    tr = Trunc({"x": d_max})
    out = {}
    for m in range(1, d_max + 1):
        out[mono({"x": m})] = rat((-1) ** (m - 1) * 4 ** m, m)
    return Series(RING_Q, out, tr, _clean=True)


def gamma_x_check(order: int) -> dict:
    """Verify the differential equations and closed forms for Gamma.

    Checks, coefficient by coefficient inside the reliable window:
      * Gamma(t,0) is the even Bernoulli tail;
      * Gamma(0,x) is the simple-pole part of -t log Phi;
      * tx Gamma_xx = x(Gamma_x)^2 + (1-t)Gamma_x - 1;
      * -t^2 x g_xx = t^2 x(g_x)^2 + t^2 g_x - t g_x - 1 for g = log Phi;
      * Gamma_x against the q_{k,j} closed form;
      * Gamma against the c_{k,j} closed form.
    Returns {"ok": bool, "checks": [(name, ok, detail)]}.
    """
    T, D = order, order
    checks = []

    def record(name, diff_coeffs, t_cap, x_cap):
        bad = [(m, c) for m, c in sorted(diff_coeffs.items())
               if dict(m).get("t", 0) <= t_cap and dict(m).get("x", 0) <= x_cap]
        ok = not bad
        detail = "" if ok else "first mismatch at %r: %s" % (bad[0][0], bad[0][1])
        checks.append((name, ok, detail))

    gam = gamma_series(T, D)
    tr = gam.trunc

    # initial conditions
    bern = {}
    i = 1
    while 2 * i <= T:
        bern[mono({"t": 2 * i})] = -bernoulli(2 * i) / (2 * i * (2 * i - 1))
        i += 1
    record("gamma(t,0)", (gam.slice("x", 0)
                          - Series(RING_Q, bern, Trunc({"t": T}))).coeffs, T, 0)

    pole = log_phi_coeffs(D, 0)
    g0 = {mono({"x": d}): -c / factorial(d)
          for (d, r), c in pole.items() if r == -1}
    record("gamma(0,x)", (gam.slice("t", 0)
                          - Series(RING_Q, g0, Trunc({"x": D}))).coeffs, 0, D)

    # ODE for Gamma
    gx = deriv(gam, "x")
    gxx = deriv(gx, "x")
    t1 = Series.monomial(RING_Q, {"t": 1}, rat(1), tr)
    x1 = Series.monomial(RING_Q, {"x": 1}, rat(1), tr)
    lhs = t1 * x1 * gxx
    rhs = x1 * gx * gx + gx - t1 * gx - Series.one(RING_Q, tr)
    record("gamma ODE", (lhs - rhs).coeffs, T - 1, D - 2)

    # eq for g = log Phi itself, with its simple t-poles
    ltr = Trunc({"t": T, "x": D}, laurent="t", lower=-1)
    gstar = Series(RING_Q, {mono({"t": r, "x": d}): c / factorial(d)
                            for (d, r), c in log_phi_coeffs(D, T).items()},
                   ltr)
    sx = deriv(gstar, "x")
    sxx = deriv(sx, "x")
    t2 = Series.monomial(RING_Q, {"t": 2}, rat(1), ltr)
    lhs5 = -(t2 * x1.with_trunc(ltr) * sxx)
    rhs5 = t2 * x1.with_trunc(ltr) * sx * sx + t2 * sx \
        - t1.with_trunc(ltr) * sx - Series.one(RING_Q, ltr)
    record("log-phi ODE", (lhs5 - rhs5).coeffs, T - 1, D - 2)

    # closed form for Gamma_x via q_{k,j}
    xtr1 = Trunc({"x": D + 1})
    head = _x_shift_down((binomial_power("x", 1, xtr1)
                          - Series.one(RING_Q, xtr1)) / 2).with_trunc(tr)
    closed = head + t1 * binomial_power("x", -2, Trunc({"x": D})).with_trunc(tr)
    q = q_table(T)
    for k in range(1, T):
        for j in range(k + 1):
            pw = binomial_power("x", -2 * j - k - 2,
                                Trunc({"x": D})).with_trunc(tr)
            term = Series.monomial(
                RING_Q, {"t": k + 1, "x": j},
                rat(q[(k, j)] * (-1) ** j), tr)
            closed = closed + term * pw
    record("gamma_x closed form", (gx - closed).coeffs, T, D - 1)

    # closed form for Gamma via c_{k,j}
    g0s = Series(RING_Q, g0, Trunc({"x": D})).with_trunc(tr)
    gclosed = g0s + (t1 * _log_1p4x(D).with_trunc(tr)) / 4
    c = c_table(T)
    for k in range(1, T):
        for j in range(k + 1):
            if not c[(k, j)]:
                continue
            pw = binomial_power("x", -2 * j - k,
                                Trunc({"x": D})).with_trunc(tr)
            term = Series.monomial(
                RING_Q, {"t": k + 1, "x": j},
                -c[(k, j)] * (-1) ** j, tr)
            gclosed = gclosed + term * pw
    record("gamma closed form", (gam - gclosed).coeffs, T, D)

    return {"ok": all(ok for _, ok, _ in checks), "checks": checks}


def _y_sub(order: int) -> Series:
    """x = -y/(1+4y) as a series in y."""
    tr = Trunc({"y": order})
    out = {}
    for k in range(1, order + 1):
        out[mono({"y": k})] = rat((-1) ** k * 4 ** (k - 1))
    return Series(RING_Q, out, tr, _clean=True)


def recompose_y(f: Series, order: int) -> Series:
    """Substitute x = -y/(1+4y) into a univariate series in x."""
    return series_compose(f.with_trunc(Trunc({"x": order})), _y_sub(order))


@lru_cache(maxsize=None)
def b_coeffs(N: int) -> Dict[Tuple[int, int], Rat]:
    """b^n_j with (x d/dx)^{n-1}((1/(2t))sqrt(1+4x)) = sum b^n_j u^{-1}y^j.

    Computed from S_n = (x d/dx)^{n-1}((1/2)sqrt(1+4x)): the y-expansion
    of S_n/sqrt(1+4x) is the (finite) coefficient list.  Asserts the
    extremal value b^n_{n-1} = -2^{n-2}(2n-5)!!.
    """
    order = 2 * N + 6
    tr = Trunc({"x": order})
    s = binomial_power("x", 1, tr) / 2
    isqrt = binomial_power("x", -1, tr)
    out: Dict[Tuple[int, int], Rat] = {}
    for n in range(1, N + 1):
        if n > 1:
            s = euler_op(s, "x", 1)
        ypoly = recompose_y(s * isqrt, order)
        for m, c in ypoly.coeffs.items():
            j = dict(m).get("y", 0)
            if j >= n:
                raise SeriesError("b^%d_%d unexpectedly nonzero" % (n, j))
            out[(n, j)] = c
        extremal = out.get((n, n - 1), rat(0))
        want = -rat(2) ** (n - 2) * df_odd(2 * n - 5)
        if extremal != want:
            raise SeriesError("b^%d_%d = %s, expected %s"
                              % (n, n - 1, extremal, want))
    return out


@lru_cache(maxsize=None)
def cn_table(N: int, K: int) -> Dict[Tuple[int, int, int], Rat]:
    """c^n_{k,j} for 1 <= n <= N, 0 <= k <= K, 0 <= j <= k+n; the n = 0
    rows replicate c_{k,j}.

    Extracted from the t^k slices of
    (x d/dx)^{n-1}((-1+sqrt(1+4x))/(2t)) - (x d/dx)^n (Gamma/t):
    each slice times (1+4x)^{k/2}, recomposed in y, is the row polynomial.
    """
    order = N + K + 5
    gam = gamma_series(K + 1, order)
    xtr = Trunc({"x": order})
    # head_n = (x d/dx)^{n-1} of (-1 + sqrt(1+4x))/2, the t^{-1} part
    head = (binomial_power("x", 1, xtr) - Series.one(RING_Q, xtr)) / 2
    out: Dict[Tuple[int, int, int], Rat] = {}
    for (k, j), v in c_table(K).items():
        out[(0, k, j)] = v
    body = gam  # (x d/dx)^n Gamma, times 1/t handled by slice index
    for n in range(1, N + 1):
        if n > 1:
            head = euler_op(head, "x", 1)
        body = euler_op(body, "x", 1)
        for k in range(0, K + 1):
            # t^k slice of P_n = head/t - body/t; head only feeds t^{-1}
            slc = body.slice("t", k + 1) * (-1)
            row = slc * binomial_power("x", k, xtr)
            ypoly = recompose_y(row, order)
            for m, c in ypoly.coeffs.items():
                jj = dict(m).get("y", 0)
                if jj > k + n:
                    raise SeriesError("c^%d_{%d,%d} out of range" % (n, k, jj))
                out[(n, k, jj)] = c
        # the pole slices must cancel between head and body
        pole = body.slice("t", 0) * (-1) + head
        if pole.coeffs:
            raise SeriesError("t^-1 slice of the defining equation nonzero")
    return out


def uy_extract(P: Series, r: int, d: int) -> Rat:
    """Coefficient transfer: [P]_{t^r x^d} computed on the (u, y) side as
    (-1)^d [(1+4y)^{(r+2d-2)/2} P-hat]_{u^r y^d}, where each monomial
    t^a x^b maps to u^a (-y)^b (1+4y)^{-a/2-b}."""
    tr = Trunc({"u": r, "y": d})
    acc = Series.zero(P.ring, tr)
    for m, c in P.coeffs.items():
        e = dict(m)
        a, b = e.get("t", 0), e.get("x", 0)
        if set(e) - {"t", "x"}:
            raise SeriesError("uy_extract expects a series in t, x")
        if a > r or b > d + (r - a):
            continue
        half = (r + 2 * d - 2) - a - 2 * b
        bp = binomial_power("y", half, tr)
        if P.ring == RING_K:
            bp = bp.to_kappa()
        acc = acc + bp * Series(P.ring, {mono({"u": a, "y": b}):
                                         c * (-1) ** b}, tr)
    val = acc.extract({"u": r, "y": d})
    return val * (-1) ** d


def g_series(n: int, m: int, u_max: int, y_max: int) -> Series:
    """G_{n,m} = sum_j kappa_{m-1} b^n_j u^{n-1} y^j
    - sum_{k,j} kappa_{k+m} c^n_{k,j} u^{k+n} y^j."""
    if n < 1 or m < 1:
        raise SeriesError("g_series needs n, m >= 1")
    tr = Trunc({"u": u_max, "y": y_max})
    out = {}
    if n - 1 <= u_max:
        for (nn, j), b in b_coeffs(n).items():
            if nn == n and j <= y_max:
                out[mono({"u": n - 1, "y": j})] = KappaPoly.kappa(m - 1, b)
    kmax = u_max - n
    if kmax >= 0:
        for (nn, k, j), c in cn_table(n, kmax).items():
            if nn == n and k <= kmax and j <= y_max and c:
                key = mono({"u": k + n, "y": j})
                cur = out.get(key)
                term = KappaPoly.kappa(k + m, -c)
                out[key] = term if cur is None else cur + term
    return Series(RING_K, out, tr)


def gamma_c_series(u_max: int, y_max: int) -> Series:
    """gamma^c = sum_{k>=1} sum_{j<=k} kappa_k c_{k,j} u^k y^j."""
    tr = Trunc({"u": u_max, "y": y_max})
    out = {}
    for (k, j), c in c_table(u_max).items():
        if k <= u_max and j <= y_max and c:
            out[mono({"u": k, "y": j})] = KappaPoly.kappa(k, c)
    return Series(RING_K, out, tr)


def thm4_relation(g: int, r: int, d: int, sigma: tuple,
                  ) -> Optional[Relation]:
    """[(1+4y)^e exp(-gamma^c + sum G_{l,|.|} p^tau/|Aut|)] at
    u^{r-|sigma|+l(sigma)} y^d p^sigma, with e = (r-|sigma|-g+2d-1)/2.

    None unless g-2d-1+|sigma| < r and g = r+|sigma|+1 mod 2."""
    size, length = sum(sigma), len(sigma)
    if not (g - 2 * d - 1 + size < r and (g - r - size - 1) % 2 == 0):
        return None
    e = (r - size - g + 2 * d - 1) // 2
    u_max = r - size + length
    if u_max < 0:
        return Relation(poly=KappaPoly.zero(), family="THM4", g=g, r=r,
                        d=d, sigma=sigma)
    tr_upper = {"u": u_max, "y": d}
    p_mults: Dict[int, int] = {}
    for part in sigma:
        p_mults[part] = p_mults.get(part, 0) + 1
    for i, a in p_mults.items():
        tr_upper[pvar(i)] = a
    tr = Trunc(tr_upper)
    arg = -gamma_c_series(u_max, d).with_trunc(tr)
    for tau in _p_multisets(p_mults):
        if not tau:
            continue
        tsize = sum(i * a for i, a in tau)
        tlen = sum(a for _, a in tau)
        aut = 1
        for _, a in tau:
            aut *= factorial(a)
        gg = g_series(tlen, tsize, u_max, d)
        out = {}
        pex = {pvar(i): a for i, a in tau}
        for m, c in gg.coeffs.items():
            ex = dict(m)
            ex.update(pex)
            out[mono(ex)] = c / aut
        arg = arg + Series(RING_K, out, tr)
    pref = binomial_power("y", 2 * e, Trunc({"y": d})).with_trunc(tr)
    total = exp_heavy_split(arg) * pref.to_kappa()
    target = {"u": u_max, "y": d}
    for i, a in p_mults.items():
        target[pvar(i)] = a
    poly = total.extract(target)
    return Relation(poly=poly, family="THM4", g=g, r=r, d=d, sigma=sigma)


def _p_multisets(p_mults: Dict[int, int]):
    parts = sorted(p_mults)
    for mults in iproduct(*(range(p_mults[i] + 1) for i in parts)):
        yield tuple((i, a) for i, a in zip(parts, mults) if a)


def gsigma_pm_relation(g: int, r: int, d: int, sigma: tuple
                       ) -> Optional[Relation]:
    """The pre-reduction form: [(1+4y)^e exp(-gamma^c)(G+_sigma +
    G-_sigma)] at u^{r-|sigma|+l(sigma)} y^d, with the division sums
    G(+/-)_sigma = sum prod (G_{l,|.|} +/- (delta_{l,1}/2)
    sqrt(1+4y) kappa_{|.|-1})."""
    size, length = sum(sigma), len(sigma)
    if not (g - 2 * d - 1 + size < r and (g - r - size - 1) % 2 == 0):
        return None
    e = (r - size - g + 2 * d - 1) // 2
    u_max = r - size + length
    if u_max < 0:
        return Relation(poly=KappaPoly.zero(), family="THM4", g=g, r=r,
                        d=d, sigma=sigma)
    tr = Trunc({"u": u_max, "y": d})
    root = binomial_power("y", 1, Trunc({"y": d})).with_trunc(tr).to_kappa()
    gexp = series_exp(-gamma_c_series(u_max, d))
    total = Series.zero(RING_K, tr)
    for sgn in (1, -1):
        if not sigma:
            total = total + Series.one(RING_K, tr)
            continue
        for blocks in divisions(sigma):
            term = Series.one(RING_K, tr)
            for blk in blocks:
                fac = g_series(len(blk), sum(blk), u_max, d)
                if len(blk) == 1:
                    fac = fac + root * KappaPoly.kappa(sum(blk) - 1,
                                                       rat(sgn, 2))
                term = term * fac
            total = total + term
    pref = binomial_power("y", 2 * e, Trunc({"y": d})).with_trunc(tr)
    poly = (gexp * total * pref.to_kappa()).extract({"u": u_max, "y": d})
    return Relation(poly=poly, family="THM4", g=g, r=r, d=d, sigma=sigma)


def h_series(n: int, m: int, u_max: int) -> Series:
    """H_{n,m} = 2^{n-2}(2n-5)!! kappa_{m-1} u^{n-1}
    + 4^{n-1}(n-1)! kappa_m u^n
    + sum_k (6k)(6k+4)...(6k+4(n-1)) c_{k,k} kappa_{k+m} u^{k+n}."""
    if n < 1 or m < 1:
        raise SeriesError("h_series needs n, m >= 1")
    tr = Trunc({"u": u_max})
    out = {}
    if n - 1 <= u_max:
        out[mono({"u": n - 1})] = KappaPoly.kappa(
            m - 1, rat(2) ** (n - 2) * df_odd(2 * n - 5))
    if n <= u_max:
        key = mono({"u": n})
        cur = out.get(key)
        term = KappaPoly.kappa(m, rat(4) ** (n - 1) * factorial(n - 1))
        out[key] = term if cur is None else cur + term
    ckk = c_table(max(u_max - n, 0))
    for k in range(1, u_max - n + 1):
        coeff = ckk[(k, k)]
        for mm in range(n):
            coeff = coeff * (6 * k + 4 * mm)
        out[mono({"u": k + n})] = KappaPoly.kappa(k + m, coeff)
    return Series(RING_K, out, tr)


def prop3_relation(g: int, r: int, sigma: tuple) -> Optional[Relation]:
    """[exp(-sum c_{k,k} kappa_k u^k - sum H_{l,|.|} p^tau/|Aut|)] at
    u^{r-|sigma|+l(sigma)} p^sigma; None unless 3r >= g+1+3|sigma|-2l
    and g = r+|sigma|+1 mod 2."""
    size, length = sum(sigma), len(sigma)
    if not (3 * r >= g + 1 + 3 * size - 2 * length
            and (g - r - size - 1) % 2 == 0):
        return None
    u_max = r - size + length
    if u_max < 0:
        return Relation(poly=KappaPoly.zero(), family="PROP3", g=g, r=r,
                        sigma=sigma)
    upper = {"u": u_max}
    p_mults: Dict[int, int] = {}
    for part in sigma:
        p_mults[part] = p_mults.get(part, 0) + 1
    for i, a in p_mults.items():
        upper[pvar(i)] = a
    tr = Trunc(upper)
    out = {}
    for (k, j), c in c_table(u_max).items():
        if k == j and k <= u_max:
            out[mono({"u": k})] = KappaPoly.kappa(k, c)
    arg = -Series(RING_K, out, tr)
    for tau in _p_multisets(p_mults):
        if not tau:
            continue
        tsize = sum(i * a for i, a in tau)
        tlen = sum(a for _, a in tau)
        aut = 1
        for _, a in tau:
            aut *= factorial(a)
        hh = h_series(tlen, tsize, u_max)
        add = {}
        pex = {pvar(i): a for i, a in tau}
        for m, c in hh.coeffs.items():
            ex = dict(m)
            ex.update(pex)
            add[mono(ex)] = c * rat(-1, aut)
        arg = arg + Series(RING_K, add, tr)
    target = {"u": u_max}
    for i, a in p_mults.items():
        target[pvar(i)] = a
    poly = exp_heavy_split(arg).extract(target)
    return Relation(poly=poly, family="PROP3", g=g, r=r, sigma=sigma)
