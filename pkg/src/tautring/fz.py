"""The hypergeometric-side relation family and its bridge to the
stable-quotient family.

Everything is built from A(z) = sum (6i)!/((3i)!(2i)!) (z/72)^i, the
companion B with the (6i+1)/(6i-1) factor, C = B/A, and the kappa
insertion {sum c_r z^r}_kappa = sum c_r kappa_r z^r.  The relation
families are coefficient extractions of E * exp(-{...}_kappa) with
E = exp(-{log A}_kappa).

The decomposition of the SQ side into the FZ side runs in an exact
finite symbol algebra with generators S[a,j] = {z^a C^j}_kappa (j >= 1);
the j = 0 insertions are concrete kappa_a z^a terms.  Pure products of
j = 1 symbols identify the matrix entries; the residual after
subtraction must vanish identically, which is the consistency content
of the e^{yg} lemma.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct
from typing import Dict, List, Optional, Tuple

from .rationals import Rat, rat, factorial
from .series import (RING_K, RING_Q, Series, SeriesError, Trunc,
                     arcsin_series, deriv, mono, pvar, series_compose,
                     series_exp, series_log, sin_series)
from .kappa import KappaPoly, Relation
from .partitions import aut_order, divisions, partition, sub_multisets
from .sq import exp_heavy_split
from .ionel import df_odd, c_table


def _hyper_coeff(i: int) -> Rat:
    return rat(factorial(6 * i), factorial(3 * i) * factorial(2 * i))


def a_series(order: int, var: str = "z", scale: Rat = None) -> Series:
    """A in the variable var; scale defaults to 1/72 per power."""
    s = rat(1, 72) if scale is None else rat(scale)
    tr = Trunc({var: order})
    out = {}
    acc = rat(1)
    for i in range(order + 1):
        out[mono({var: i})] = _hyper_coeff(i) * acc
        acc = acc * s
    return Series(RING_Q, out, tr, _clean=True)


def b_series(order: int, var: str = "z", scale: Rat = None) -> Series:
    s = rat(1, 72) if scale is None else rat(scale)
    tr = Trunc({var: order})
    out = {}
    acc = rat(1)
    for i in range(order + 1):
        out[mono({var: i})] = _hyper_coeff(i) * rat(6 * i + 1, 6 * i - 1) * acc
        acc = acc * s
    return Series(RING_Q, out, tr, _clean=True)


@lru_cache(maxsize=None)
def c_series(order: int, var: str = "z", s72: bool = True) -> Series:
    """C = B/A; s72 False uses the unscaled (z -> 72 z) normalization."""
    scale = None if s72 else rat(1)
    a = a_series(order, var, scale)
    b = b_series(order, var, scale)
    from .series import series_inverse
    return b * series_inverse(a)


def log_a_coeffs(order: int) -> Dict[int, Rat]:
    lg = series_log(a_series(order))
    return {dict(m).get("z", 0): c for m, c in lg.coeffs.items()}


def kappa_insert(f: Series, var: str = "z") -> Series:
    """{F}_kappa: multiply each coefficient by kappa_{e} where e is the
    exponent of var in its monomial."""
    if f.ring != RING_Q:
        raise SeriesError("kappa_insert expects rational coefficients")
    out = {}
    for m, c in f.coeffs.items():
        e = dict(m).get(var, 0)
        out[m] = KappaPoly.kappa(e, c)
    return Series(RING_K, out, f.trunc, _clean=True)


def e_series(order: int) -> Series:
    """E = exp(-{log A}_kappa)."""
    tr = Trunc({"z": order})
    lg = kappa_insert(series_log(a_series(order)))
    return series_exp(-lg, tr)


# -- the C_n ladder ----------------------------------------------------

@lru_cache(maxsize=None)
def cn_poly(n: int) -> Dict[Tuple[int, int], Rat]:
    """C_n as a polynomial in (z, C): map (z-degree, C-degree) -> coeff.

    C_1 = C and C_{i+1} = (12 z^2 d/dz - 4iz) C_i, where d/dz acts
    through 12 z^2 C' = 1 + 4zC - C^2.
    """
    if n < 1:
        raise SeriesError("cn_poly needs n >= 1")
    if n == 1:
        return {(0, 1): rat(1)}
    prev = cn_poly(n - 1)
    i = n - 1
    out: Dict[Tuple[int, int], Rat] = {}

    def add(zd, cd, v):
        if not v:
            return
        k = (zd, cd)
        nv = out.get(k, rat(0)) + v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)

    for (zd, cd), v in prev.items():
        add(zd + 1, cd, v * 12 * zd)          # 12 z^2 (partial_z)
        if cd:
            add(zd, cd - 1, v * cd)           # partial_C * 1
            add(zd + 1, cd, v * cd * 4)       # partial_C * 4zC
            add(zd, cd + 1, -v * cd)          # partial_C * (-C^2)
        add(zd + 1, cd, -v * 4 * i)           # -4iz
    return out


def f_poly(i: int, j: int) -> Dict[int, Rat]:
    """f_{ij}: the z-polynomial coefficient of C^j in C_i."""
    return {zd: v for (zd, cd), v in cn_poly(i).items() if cd == j}


def cn_series(n: int, order: int) -> Series:
    """C_n as a z-series by operator iteration (oracle for cn_poly)."""
    cur = c_series(order + n)
    z1 = Series.monomial(RING_Q, {"z": 1}, rat(1), cur.trunc)
    for i in range(1, n):
        cur = z1 * z1 * deriv(cur, "z") * 12 - z1 * cur * (4 * i)
    return cur.with_trunc(Trunc({"z": order}))


def cn_closed_series(n: int, order: int) -> Series:
    """2^n times the H-style closed form for C_n."""
    tr = Trunc({"z": order})
    out = {}
    if n - 1 <= order:
        out[mono({"z": n - 1})] = rat(2) ** (n - 2) * df_odd(2 * n - 5)
    if n <= order:
        out[mono({"z": n})] = out.get(mono({"z": n}), rat(0)) \
            + rat(4) ** (n - 1) * factorial(n - 1)
    ckk = c_table(max(order - n, 0))
    for k in range(1, order - n + 1):
        v = ckk[(k, k)]
        for m in range(n):
            v = v * (6 * k + 4 * m)
        out[mono({"z": k + n})] = v
    return Series(RING_Q, {m: c * rat(2) ** n for m, c in out.items() if c},
                  tr, _clean=True)


# -- identity suite ----------------------------------------------------

def identity_suite(order: int = 30) -> dict:
    """The displayed differential and series identities for A, B, C.

    Returns {"ok": bool, "checks": [(name, ok, detail)]}.
    """
    checks = []

    def record(name, diff: Series, z_cap=None):
        cap = order if z_cap is None else z_cap
        bad = [(m, c) for m, c in diff.terms_sorted()
               if dict(m).get("z", dict(m).get("t", 0)) <= cap]
        ok = not bad
        detail = "" if ok else "first mismatch at %r: %s" % (bad[0][0],
                                                            bad[0][1])
        checks.append((name, ok, detail))

    tr = Trunc({"z": order})
    a = a_series(order)
    b = b_series(order)
    z1 = Series.monomial(RING_Q, {"z": 1}, rat(1), tr)
    ap = deriv(a, "z")
    app = deriv(ap, "z")
    record("hypergeometric ODE",
           z1 * z1 * app * 36 + (z1 * 72 - Series.const(RING_Q, rat(6), tr))
           * ap + a * 5, order - 2)

    record("B from A", a * rat(-1, 2) + z1 * a + z1 * z1 * ap * 6
           - b / 2, order - 1)

    cc = c_series(order)
    record("C Riccati ODE",
           z1 * z1 * deriv(cc, "z") * 12
           - (Series.one(RING_Q, tr) + z1 * cc * 4 - cc * cc), order - 1)

    lga = series_log(a)
    e1 = z1 * deriv(lga, "z")          # (z d/dz) log A
    e2 = z1 * deriv(e1, "z")           # (z d/dz)^2 log A
    lhs = z1 + z1 * z1 * 4 + z1 * z1 * e2 * 36 + z1 * z1 * e1 * 24
    rhs = Series.const(RING_Q, rat(1, 4), tr) - cc * cc / 4
    record("two-part identity", lhs - rhs, order - 2)

    # sine series: (3/2t) sin((2/3) asin t) and -(3/4t) sin((4/3) asin t)
    T = 2 * 8 + 2
    str_ = Trunc({"t": T + 1})
    asin = arcsin_series("t", str_)
    for name, frac, mul, sign in (("sine series A", rat(2, 3), rat(3, 2), 1),
                                  ("sine series B", rat(4, 3), rat(-3, 4), 1)):
        inner = asin * frac
        comp = series_compose(sin_series("t", str_), inner)
        shifted = {}
        for m, c in comp.coeffs.items():
            e = dict(m).get("t", 0)
            if e >= 1:
                shifted[mono({"t": e - 1})] = c * mul
        got = Series(RING_Q, shifted, Trunc({"t": T}), _clean=True)
        want = {}
        for i in range(0, 9):
            v = _hyper_coeff(i) / (df_odd(2 * i + 1) * rat(216) ** i)
            if name.endswith("B"):
                v = v * rat(6 * i + 1, 6 * i - 1)
            want[mono({"t": 2 * i})] = v
        record(name, got - Series(RING_Q, want, Trunc({"t": T})), 2 * 8)

    return {"ok": all(ok for _, ok, _ in checks), "checks": checks}


# -- the Psi form ------------------------------------------------------

def _psi_parts(sigma_max: int) -> List[int]:
    return [i for i in range(1, sigma_max + 1) if i % 3 != 2]


@lru_cache(maxsize=None)
def psi_log_coeffs(r_max: int, sigma_max: int
                   ) -> Dict[Tuple[tuple, int], Rat]:
    """C^r(sigma) from log Psi, for |sigma| <= sigma_max, r <= r_max.

    Psi couples p_{3k} to the A-type series and p_{3k+1} to the B-type
    series; partitions with parts congruent to 2 mod 3 never occur.
    """
    parts = _psi_parts(sigma_max)
    upper = {"t": r_max}
    for i in parts:
        upper[pvar(i)] = sigma_max // i
    tr = Trunc(upper)
    a72 = a_series(r_max, "t", rat(1)).with_trunc(tr)
    c72 = c_series(r_max, "t", False).with_trunc(tr)
    w = Series.zero(RING_Q, tr)
    for i in parts:
        if i % 3 == 0:
            w = w + Series.monomial(RING_Q, {pvar(i): 1, "t": i // 3},
                                    rat(1), tr)
        else:
            w = w + c72 * Series.monomial(RING_Q,
                                          {pvar(i): 1, "t": (i - 1) // 3},
                                          rat(1), tr)
    budget = sum(sigma_max // i for i in parts)
    lg = series_log(a72.with_trunc(tr))
    power = Series.one(RING_Q, tr)
    for m in range(1, budget + 1):
        power = power * w
        if power.is_zero():
            break
        lg = lg + power * rat((-1) ** (m - 1), m)
    table: Dict[Tuple[tuple, int], Rat] = {}
    for m, c in lg.coeffs.items():
        e = dict(m)
        r = e.pop("t", 0)
        sig = []
        for v, k in e.items():
            sig.extend([int(v[1:])] * k)
        table[(partition(sig), r)] = c
    return table


def thm5_relation(g: int, r: int, sigma: tuple) -> Optional[Relation]:
    """[exp(-gamma)]_{t^r p^sigma} with gamma = sum C^r(s) kappa_r t^r p^s;
    None unless g-1+|sigma| < 3r and g = r+|sigma|+1 mod 2."""
    sigma = partition(sigma)
    for part in sigma:
        if part % 3 == 2:
            raise SeriesError("parts congruent to 2 mod 3 not allowed")
    size = sum(sigma)
    if not (g - 1 + size < 3 * r and (g - r - size - 1) % 2 == 0):
        return None
    table = psi_log_coeffs(r, max(size, 1))
    p_mults: Dict[int, int] = {}
    for part in sigma:
        p_mults[part] = p_mults.get(part, 0) + 1
    upper = {"t": r}
    for i, a in p_mults.items():
        upper[pvar(i)] = a
    tr = Trunc(upper)
    out = {}
    for (sig, rr), c in table.items():
        if rr > r:
            continue
        if any(sig.count(i) > p_mults.get(i, 0) for i in set(sig)):
            continue
        exps = {"t": rr}
        for i in set(sig):
            exps[pvar(i)] = sig.count(i)
        key = mono(exps)
        cur = out.get(key)
        term = KappaPoly.kappa(rr, c)
        out[key] = term if cur is None else cur + term
    gamma = Series(RING_K, out, tr)
    target = {"t": r}
    for i, a in p_mults.items():
        target[pvar(i)] = a
    poly = exp_heavy_split(-gamma).extract(target)
    return Relation(poly=poly, family="FZ", g=g, r=r, sigma=sigma)


# -- the reindexed z-form ----------------------------------------------

def sq_fz_sigma_series(sigma: tuple, side: str, z_max: int) -> Series:
    """The z-series [exp(...)]_{p^sigma} whose z^r coefficient, after
    multiplying by E, is the relation.

    side FZ: exponent -{log(1 + C(p_1 + p_2 z + ...))}_kappa
    side SQ: exponent -sum {z^{|tau|-l} C_l}_kappa p^tau / |Aut(tau)|
    """
    if side not in ("SQ", "FZ"):
        raise SeriesError("side must be SQ or FZ")
    sigma = partition(sigma)
    p_mults: Dict[int, int] = {}
    for part in sigma:
        p_mults[part] = p_mults.get(part, 0) + 1
    upper = {"z": z_max}
    for i, a in p_mults.items():
        upper[pvar(i)] = a
    tr = Trunc(upper)
    if side == "FZ":
        cc = c_series(z_max).with_trunc(tr)
        cp = Series.zero(RING_Q, tr)
        for i in p_mults:
            cp = cp + cc * Series.monomial(RING_Q, {pvar(i): 1, "z": i - 1},
                                           rat(1), tr)
        lg = Series.zero(RING_Q, tr)
        power = Series.one(RING_Q, tr)
        for m in range(1, len(sigma) + 1):
            power = power * cp
            if power.is_zero():
                break
            lg = lg + power * rat((-1) ** (m - 1), m)
        arg = -kappa_insert(lg)
    else:
        arg = Series.zero(RING_K, tr)
        seen = set()
        for tau in sub_multisets(sigma):
            if not tau or tau in seen:
                continue
            seen.add(tau)
            ell = len(tau)
            shift = sum(tau) - ell
            base = cn_series(ell, z_max)
            out = {}
            pex = {}
            for i in set(tau):
                pex[pvar(i)] = tau.count(i)
            for m, c in base.coeffs.items():
                e = dict(m).get("z", 0) + shift
                if e > z_max:
                    continue
                exps = dict(pex)
                exps["z"] = e
                out[mono(exps)] = KappaPoly.kappa(e, c)
            arg = arg - Series(RING_K, out, tr) / aut_order(tau)
    total = exp_heavy_split(arg)
    out = {}
    pex = {pvar(i): a for i, a in p_mults.items()}
    for m, c in total.coeffs.items():
        e = dict(m)
        zdeg = e.pop("z", 0)
        if e != pex:
            continue
        out[mono({"z": zdeg})] = c
    return Series(RING_K, out, Trunc({"z": z_max}), _clean=True)


def fz_reindexed_relation(g: int, r: int, sigma: tuple
                          ) -> Optional[Relation]:
    """[E exp(-{log(1+C(p_1+p_2 z+...))}_kappa)]_{z^r p^sigma}; None
    unless 3r >= g+3|sigma|-2l(sigma)+1 with matching parity."""
    sigma = partition(sigma)
    size, length = sum(sigma), len(sigma)
    bound = g + 3 * size - 2 * length + 1
    if not (3 * r >= bound and (3 * r - bound) % 2 == 0):
        return None
    fzs = sq_fz_sigma_series(sigma, "FZ", r)
    poly = (e_series(r) * fzs).extract({"z": r})
    return Relation(poly=poly, family="FZ_REINDEXED", g=g, r=r, sigma=sigma)


def sq_side_relation(g: int, r: int, sigma: tuple) -> Optional[Relation]:
    """[E * SQ_sigma]_{z^r}: the z-form of the stable-quotient family;
    equals 2^{l(sigma)} times the u-form construction."""
    sigma = partition(sigma)
    size, length = sum(sigma), len(sigma)
    bound = g + 3 * size - 2 * length + 1
    if not (3 * r >= bound and (3 * r - bound) % 2 == 0):
        return None
    sqs = sq_fz_sigma_series(sigma, "SQ", r)
    poly = (e_series(r) * sqs).extract({"z": r})
    return Relation(poly=poly, family="PROP3", g=g, r=r, sigma=sigma)


# -- the triangular decomposition --------------------------------------

# A symbol monomial is a sorted tuple of (a, j) pairs standing for the
# product of generators S[a,j] = {z^a C^j}_kappa with j >= 1.  A symbol
# polynomial maps monomials to z-series coefficients over the kappa ring.

def _sym_zero():
    return {}


def _sym_add(p, q, scale=None):
    out = dict(p)
    for m, c in q.items():
        if scale is not None:
            c = c * scale
        cur = out.get(m)
        s = c if cur is None else cur + c
        if s.is_zero():
            out.pop(m, None)
        else:
            out[m] = s
    return out


def _sym_mul(p, q):
    out = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            m = tuple(sorted(ma + mb))
            c = ca * cb
            cur = out.get(m)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
    return out


def _blocks_aut(blocks) -> int:
    seen: Dict[tuple, int] = {}
    for b in blocks:
        seen[b] = seen.get(b, 0) + 1
    n = 1
    for k in seen.values():
        n *= factorial(k)
    return n


def _zk_const(v, tr) -> Series:
    return Series.const(RING_K, KappaPoly.const(rat(v)), tr)


def _sym_one(tr):
    return {(): Series.one(RING_K, tr)}


def fz_symbolic(tau: tuple, tr: Trunc):
    """FZ_tau in the symbol algebra: sum over divisions of tau of
    prod (-1)^l (l-1)!/|Aut(b)| S[|b|-l, l], weighted by block-multiset
    automorphisms."""
    tau = partition(tau)
    if not tau:
        return _sym_one(tr)
    total = _sym_zero()
    for blocks in divisions(tau):
        coeff = rat(1, _blocks_aut(blocks))
        m = []
        for b in blocks:
            ell = len(b)
            coeff *= rat((-1) ** ell * factorial(ell - 1), aut_order(b))
            m.append((sum(b) - ell, ell))
        term = {tuple(sorted(m)): _zk_const(coeff, tr)}
        total = _sym_add(total, term)
    return total


def sq_symbolic(sigma: tuple, tr: Trunc):
    """SQ_sigma in the symbol algebra, splitting each C_l into its
    (z, C)-polynomial; C^0 contributions become concrete kappa_a z^a."""
    sigma = partition(sigma)
    if not sigma:
        return _sym_one(tr)
    total = _sym_zero()
    for blocks in divisions(sigma):
        term = _sym_one(tr)
        for b in blocks:
            ell = len(b)
            shift = sum(b) - ell
            factor = _sym_zero()
            for (zd, cd), v in cn_poly(ell).items():
                a = shift + zd
                coeff = -v / aut_order(b)
                if cd == 0:
                    ser = Series.monomial(RING_K, {"z": a},
                                          KappaPoly.kappa(a, coeff), tr)
                    factor = _sym_add(factor, {(): ser})
                else:
                    factor = _sym_add(factor,
                                      {((a, cd),): _zk_const(coeff, tr)})
            term = _sym_mul(term, factor)
        total = _sym_add(total, {m: c / _blocks_aut(blocks)
                                 for m, c in term.items()})
    return total


def sym_evaluate(p, z_max: int) -> Series:
    """Evaluate a symbol polynomial to an honest z-series (oracle)."""
    tr = Trunc({"z": z_max})
    total = Series.zero(RING_K, tr)
    for m, c in p.items():
        term = c.with_trunc(tr)
        for (a, j) in m:
            base = c_series(z_max)
            pw = Series.one(RING_Q, tr)
            for _ in range(j):
                pw = pw * base
            shifted = {}
            for mm, cc in pw.coeffs.items():
                e = dict(mm).get("z", 0) + a
                if e <= z_max:
                    shifted[mono({"z": e})] = cc
            term = term * kappa_insert(Series(RING_Q, shifted, tr,
                                              _clean=True))
        total = total + term
    return total


def decompose_sigma(sigma: tuple, z_max: int = 12):
    """Rows (tau, coeff) with SQ_sigma = sum coeff_tau * FZ_tau, where
    each coeff is a z-series over the kappa ring.

    The pure products of j = 1 symbols determine the coefficients; the
    residual after subtracting the combination must vanish exactly.
    """
    tr = Trunc({"z": z_max})
    sq = sq_symbolic(sigma, tr)
    rows = []
    for m in sorted(sq):
        if any(j != 1 for _, j in m):
            continue
        tau = partition(sorted((a + 1 for a, _ in m), reverse=True))
        scale = rat((-1) ** len(m) * aut_order(tau))
        rows.append((tau, sq[m] * scale))
    residual = sq
    for tau, coeff in rows:
        fz = fz_symbolic(tau, tr)
        residual = _sym_add(residual,
                            {m: c * coeff for m, c in fz.items()},
                            scale=rat(-1))
    residual = {m: c for m, c in residual.items() if not c.is_zero()}
    if residual:
        raise SeriesError("nonzero residual in decomposition for %r: %r"
                          % (sigma, sorted(residual)[:3]))
    return sorted(rows, key=lambda rc: (sum(rc[0]), rc[0]))


def decompose_sq_in_fz(sigma_max: int, z_max: int = 12):
    """The full transformation for every sigma with |sigma| <= sigma_max;
    unit-triangular with respect to partition size."""
    from .partitions import partitions_up_to
    out = {(): decompose_sigma((), z_max)}
    for sigma in partitions_up_to(sigma_max):
        out[sigma] = decompose_sigma(sigma, z_max)
    return out


def lemma5_check(x_order: int, z_order: int) -> dict:
    """f = 1 + sum (-1)^{j-1} f_{ij}/(i!(j-1)!) x^i y^j has log exactly
    linear in y.  Returns the report and the series g = [log f]_{y^1}."""
    tr = Trunc({"x": x_order, "y": x_order, "z": z_order})
    out = {(): rat(1)}
    for i in range(1, x_order + 1):
        for j in range(1, i + 1):
            for zd, v in f_poly(i, j).items():
                if zd > z_order:
                    continue
                key = mono({"x": i, "y": j, "z": zd})
                c = v * rat((-1) ** (j - 1), factorial(i)
                            * factorial(j - 1))
                out[key] = out.get(key, rat(0)) + c
    f = Series(RING_Q, {m: c for m, c in out.items() if c}, tr,
               _clean=True)
    lg = series_log(f)
    bad = [(m, c) for m, c in lg.terms_sorted()
           if dict(m).get("y", 0) >= 2]
    g = lg.slice("y", 1)
    ok = not bad
    return {"ok": ok,
            "detail": "" if ok else "y^2 term at %r: %s" % (bad[0][0],
                                                            bad[0][1]),
            "g": g,
            "f_at_y0": lg.slice("y", 0)}
