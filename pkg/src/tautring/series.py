"""Truncated multivariate formal series with exact rational coefficients.

Variables come from a fixed alphabet: the singles ``t, x, u, y, z``, the
partition variables ``p1, p2, ...`` and the pair-indexed variables
``z{i}_{j}`` (admitted only for j >= i-1).  At most one variable per series
(always ``t`` in practice) may carry a bounded Laurent part.

A monomial is stored as a sorted tuple of (variable, exponent) pairs with
all exponents nonzero; a series is a sparse map from monomials to nonzero
coefficients together with a truncation spec.  Coefficients are either
exact rationals or elements of a polynomial coefficient ring supporting
+, -, * and bool() (see kappa.KappaPoly); the two kinds are never mixed.
"""

from __future__ import annotations

from .rationals import Rat, rat, is_rat, factorial

_BASE_ORDER = {"t": 0, "x": 1, "u": 2, "y": 3, "z": 4}

_INF = float("inf")


class SeriesError(ValueError):
    """Contract violation in a series operation."""


def var_key(name: str):
    base = _BASE_ORDER.get(name)
    if base is not None:
        return (0, base, 0)
    if name[0] == "p" and name[1:].isdigit():
        return (1, int(name[1:]), 0)
    if name[0] == "z" and "_" in name:
        i, j = name[1:].split("_")
        return (2, int(i), int(j))
    raise SeriesError("unknown variable %r" % name)


def pvar(i: int) -> str:
    if i < 1:
        raise SeriesError("p-variables are indexed from 1")
    return "p%d" % i


def zvar(i: int, j: int) -> str:
    if i < 1 or j < i - 1:
        raise SeriesError("z_{i,j} requires i >= 1 and j >= i-1")
    return "z%d_%d" % (i, j)


def mono(exps: dict) -> tuple:
    """Canonical monomial from a var -> exponent mapping."""
    items = [(v, e) for v, e in exps.items() if e]
    for v, _ in items:
        var_key(v)
    return tuple(sorted(items, key=lambda it: var_key(it[0])))


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        n = d.get(v, 0) + e
        if n:
            d[v] = n
        else:
            del d[v]
    return tuple(sorted(d.items(), key=lambda it: var_key(it[0])))


def mono_sort_key(m: tuple):
    """Graded-lexicographic ordering key (total degree, then exponents)."""
    return (sum(e for _, e in m), tuple((var_key(v), -e) for v, e in m))


class Trunc:
    """Per-variable exponent bounds.

    ``upper`` maps a variable to its maximum retained exponent; variables
    absent from it are unbounded.  ``laurent``/``lower`` designate the one
    variable allowed negative exponents, down to ``lower`` (<= 0).
    """

    __slots__ = ("upper", "laurent", "lower")

    def __init__(self, upper=None, laurent=None, lower=0):
        self.upper = dict(upper or {})
        if laurent is None and lower != 0:
            raise SeriesError("lower bound without a Laurent variable")
        if lower > 0:
            raise SeriesError("Laurent lower bound must be <= 0")
        self.laurent = laurent
        self.lower = lower

    def bound(self, v: str):
        return self.upper.get(v, _INF)

    def allows(self, m: tuple) -> bool:
        lv = self.laurent
        for v, e in m:
            if e < 0:
                if v != lv or e < self.lower:
                    return False
            elif e > self.upper.get(v, _INF):
                return False
        return True

    def _merged_laurent(self, other: "Trunc"):
        if self.laurent is None:
            return other.laurent
        if other.laurent is None or other.laurent == self.laurent:
            return self.laurent
        raise SeriesError("incompatible Laurent variables %r and %r"
                          % (self.laurent, other.laurent))

    def meet_add(self, other: "Trunc") -> "Trunc":
        """Intersection of valid ranges (addition/subtraction)."""
        upper = {}
        for v in set(self.upper) | set(other.upper):
            upper[v] = min(self.bound(v), other.bound(v))
        lv = self._merged_laurent(other)
        lower = 0
        if lv is not None:
            l1 = self.lower if self.laurent == lv else 0
            l2 = other.lower if other.laurent == lv else 0
            lower = max(l1, l2)
        return Trunc(upper, lv, lower)

    def meet_mul(self, other: "Trunc") -> "Trunc":
        """Multiplication: uppers intersect, Laurent lower bounds add."""
        upper = {}
        for v in set(self.upper) | set(other.upper):
            upper[v] = min(self.bound(v), other.bound(v))
        lv = self._merged_laurent(other)
        lower = 0
        if lv is not None:
            l1 = self.lower if self.laurent == lv else 0
            l2 = other.lower if other.laurent == lv else 0
            lower = l1 + l2
        return Trunc(upper, lv, lower)

    def __eq__(self, other):
        return (isinstance(other, Trunc) and self.upper == other.upper
                and self.laurent == other.laurent and self.lower == other.lower)

    def __repr__(self):
        parts = ["%s<=%d" % (v, b) for v, b in sorted(self.upper.items())]
        if self.laurent:
            parts.append("%s>=%d" % (self.laurent, self.lower))
        return "Trunc(%s)" % ", ".join(parts)


RING_Q = "Q"
RING_K = "K"


class Series:
    """Immutable truncated series.  Do not mutate ``coeffs`` after creation."""

    __slots__ = ("ring", "coeffs", "trunc")

    def __init__(self, ring, coeffs, trunc, _clean=False):
        self.ring = ring
        self.trunc = trunc
        if _clean:
            self.coeffs = coeffs
        else:
            self.coeffs = {m: c for m, c in coeffs.items()
                           if c and trunc.allows(m)}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring, trunc):
        return cls(ring, {}, trunc, _clean=True)

    @classmethod
    def const(cls, ring, value, trunc):
        return cls(ring, {(): value} if value else {}, trunc, _clean=True)

    @classmethod
    def one(cls, ring, trunc):
        one = rat(1) if ring == RING_Q else None
        if one is None:
            from .kappa import KappaPoly
            one = KappaPoly.const(rat(1))
        return cls.const(ring, one, trunc)

    @classmethod
    def monomial(cls, ring, exps, coeff, trunc):
        m = mono(exps)
        if not trunc.allows(m):
            raise SeriesError("monomial %r outside truncation %r" % (m, trunc))
        return cls(ring, {m: coeff} if coeff else {}, trunc, _clean=True)

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def _zero_coeff(self):
        if self.ring == RING_Q:
            return rat(0)
        from .kappa import KappaPoly
        return KappaPoly.zero()

    def extract(self, exps):
        """Exact coefficient of a monomial; out-of-spec monomials rejected."""
        m = mono(exps)
        if not self.trunc.allows(m):
            raise SeriesError("monomial %r outside truncation %r"
                              % (m, self.trunc))
        return self.coeffs.get(m, self._zero_coeff())

    def slice(self, v: str, e: int) -> "Series":
        """Sub-series multiplying v^e, with v removed."""
        out = {}
        for m, c in self.coeffs.items():
            d = dict(m)
            if d.pop(v, 0) == e:
                out[tuple(sorted(d.items(), key=lambda it: var_key(it[0])))] = c
        tr = Trunc({w: b for w, b in self.trunc.upper.items() if w != v},
                   self.trunc.laurent if self.trunc.laurent != v else None,
                   self.trunc.lower if self.trunc.laurent != v else 0)
        return Series(self.ring, out, tr, _clean=True)

    def terms_sorted(self):
        return sorted(self.coeffs.items(), key=lambda it: mono_sort_key(it[0]))

    def map_coeffs(self, fn, ring=None) -> "Series":
        out = {}
        for m, c in self.coeffs.items():
            nc = fn(c)
            if nc:
                out[m] = nc
        return Series(ring or self.ring, out, self.trunc, _clean=True)

    def to_kappa(self) -> "Series":
        """Lift a rational-coefficient series into the kappa ring."""
        if self.ring == RING_K:
            return self
        from .kappa import KappaPoly
        return self.map_coeffs(KappaPoly.const, ring=RING_K)

    def with_trunc(self, trunc: Trunc) -> "Series":
        return Series(self.ring, self.coeffs, trunc)

    # -- arithmetic ---------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise SeriesError("mixed coefficient rings (%s vs %s)"
                              % (self.ring, other.ring))

    def __add__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        self._check_ring(other)
        tr = self.trunc.meet_add(other.trunc)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            n = out.get(m)
            n = c if n is None else n + c
            if n:
                out[m] = n
            else:
                out.pop(m, None)
        return Series(self.ring, out, tr)

    def __sub__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        self._check_ring(other)
        tr = self.trunc.meet_add(other.trunc)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            n = out.get(m)
            n = -c if n is None else n - c
            if n:
                out[m] = n
            else:
                out.pop(m, None)
        return Series(self.ring, out, tr)

    def __neg__(self):
        return Series(self.ring, {m: -c for m, c in self.coeffs.items()},
                      self.trunc, _clean=True)

    def scaled(self, scalar) -> "Series":
        if not scalar:
            return Series.zero(self.ring, self.trunc)
        return Series(self.ring, {m: c * scalar for m, c in self.coeffs.items()},
                      self.trunc, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scaled(other)
        self._check_ring(other)
        tr = self.trunc.meet_mul(other.trunc)
        out = _mul_dicts(self.coeffs, other.coeffs, tr)
        return Series(self.ring, out, tr, _clean=True)

    def __rmul__(self, scalar):
        return self.scaled(scalar)

    def __truediv__(self, scalar):
        inv = rat(1) / rat(scalar)
        return self.scaled(inv)

    def __eq__(self, other):
        return isinstance(other, Series) and self.ring == other.ring \
            and self.coeffs == other.coeffs

    def __repr__(self):
        terms = self.terms_sorted()[:8]
        body = " + ".join("(%s)*%s" % (c, dict(m) or 1) for m, c in terms)
        more = "" if len(self.coeffs) <= 8 else " + [%d more]" % (len(self.coeffs) - 8)
        return "Series<%s>(%s%s)" % (self.ring, body or "0", more)


def _mul_dicts(a: dict, b: dict, tr: Trunc) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out = {}
    allows = tr.allows
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(ma, mb)
            if not allows(m):
                continue
            v = ca * cb
            n = get(m)
            n = v if n is None else n + v
            if n:
                out[m] = n
            else:
                del out[m]
            get = out.get
    return out


def arith(a: Series, b: Series, op: str) -> Series:
    """add / sub / mul of two series (same coefficient ring)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise SeriesError("unknown op %r" % op)


# -- weighted grading used by exp/log ---------------------------------

def _weights(f: Series):
    """Additive positive grading on the monomials of f.

    Laurent exponents count with weight 1 and every other variable with a
    weight big enough that a maximal pole is still outgunned by a single
    positive non-Laurent exponent.
    """
    lv = f.trunc.laurent
    min_l = 0
    for m, _ in f.coeffs.items():
        for v, e in m:
            if v == lv and e < min_l:
                min_l = e
    big = 1 - min_l
    return lv, big


def _wdeg(m: tuple, lv, big) -> int:
    w = 0
    for v, e in m:
        w += e if v == lv else e * big
    return w


def _wmax(tr: Trunc, lv, big):
    wm = 0
    for v, bound in tr.upper.items():
        if bound is _INF or bound == _INF:
            continue
        wm += (bound if v == lv else bound * big)
    if lv is not None and lv not in tr.upper:
        raise SeriesError("exp/log needs a finite upper bound on %r" % lv)
    return wm


def _graded(f: Series, lv, big):
    buckets = {}
    for m, c in f.coeffs.items():
        buckets.setdefault(_wdeg(m, lv, big), {})[m] = c
    return buckets


def _check_exp_domain(f: Series, lv, tr: Trunc):
    for m in f.coeffs:
        if not m:
            raise SeriesError("exp/log argument has a nonzero constant term")
        if all(v == lv for v, _ in m) and m[0][1] < 0:
            raise SeriesError("pure Laurent pole in exp/log argument")
        for v, _ in m:
            if tr.bound(v) == _INF:
                raise SeriesError("exp/log needs a finite bound on %r" % v)


def series_exp(f: Series, trunc: Trunc | None = None) -> Series:
    """exp(f) for f with zero constant term, truncated."""
    lv, big = _weights(f)
    tr = trunc or f.trunc
    _check_exp_domain(f, lv, tr)
    fg = _graded(f, lv, big)
    wmax = _wmax(tr, lv, big)
    h = {0: {(): _one_like(f)}}
    inv = rat(1)
    for w in range(1, wmax + 1):
        acc = {}
        for wf, fcomp in fg.items():
            if wf > w:
                continue
            hcomp = h.get(w - wf)
            if not hcomp:
                continue
            part = _mul_dicts(fcomp, hcomp, tr)
            scale = rat(wf, w)
            for m, c in part.items():
                v = c * scale
                n = acc.get(m)
                n = v if n is None else n + v
                if n:
                    acc[m] = n
                else:
                    del acc[m]
        if acc:
            h[w] = acc
    out = {}
    for comp in h.values():
        out.update(comp)
    return Series(f.ring, out, tr, _clean=True)


def series_log(f: Series, trunc: Trunc | None = None) -> Series:
    """log(f) for f with constant term 1, truncated."""
    one = _one_like(f)
    if f.coeffs.get(()) != one:
        raise SeriesError("log argument must have constant term 1")
    g = Series(f.ring, {m: c for m, c in f.coeffs.items() if m}, f.trunc,
               _clean=True)
    lv, big = _weights(g)
    tr = trunc or f.trunc
    _check_exp_domain(g, lv, tr)
    fg = _graded(g, lv, big)
    wmax = _wmax(tr, lv, big)
    gamma = {}
    for w in range(1, wmax + 1):
        acc = dict(fg.get(w, ()))
        for wg, gcomp in gamma.items():
            fcomp = fg.get(w - wg)
            if not fcomp:
                continue
            part = _mul_dicts(gcomp, fcomp, tr)
            scale = rat(wg, w)
            for m, c in part.items():
                v = c * scale
                n = acc.get(m)
                n = -v if n is None else n - v
                if n:
                    acc[m] = n
                else:
                    del acc[m]
        if acc:
            gamma[w] = acc
    out = {}
    for comp in gamma.values():
        out.update(comp)
    return Series(f.ring, out, tr, _clean=True)


def series_inverse(f: Series, trunc: Trunc | None = None) -> Series:
    """1/f for f with constant term 1."""
    one = _one_like(f)
    if f.coeffs.get(()) != one:
        raise SeriesError("inverse needs constant term 1")
    g = Series(f.ring, {m: c for m, c in f.coeffs.items() if m}, f.trunc,
               _clean=True)
    lv, big = _weights(g)
    tr = trunc or f.trunc
    _check_exp_domain(g, lv, tr)
    fg = _graded(g, lv, big)
    wmax = _wmax(tr, lv, big)
    h = {0: {(): one}}
    for w in range(1, wmax + 1):
        acc = {}
        for wg, gcomp in fg.items():
            hcomp = h.get(w - wg)
            if not hcomp:
                continue
            part = _mul_dicts(gcomp, hcomp, tr)
            for m, c in part.items():
                n = acc.get(m)
                n = -c if n is None else n - c
                if n:
                    acc[m] = n
                else:
                    del acc[m]
        if acc:
            h[w] = acc
    out = {}
    for comp in h.values():
        out.update(comp)
    return Series(f.ring, out, tr, _clean=True)


def _one_like(f: Series):
    if f.ring == RING_Q:
        return rat(1)
    from .kappa import KappaPoly
    return KappaPoly.const(rat(1))


def euler_op(f: Series, v: str, n: int = 1) -> Series:
    """(v d/dv)^n applied to f; v must not be the Laurent variable."""
    if v == f.trunc.laurent:
        raise SeriesError("euler_op on the Laurent variable")
    if n == 0:
        return f
    out = {}
    for m, c in f.coeffs.items():
        k = 0
        for w, e in m:
            if w == v:
                k = e
                break
        if k:
            out[m] = c * (k ** n)
    return Series(f.ring, out, f.trunc, _clean=True)


def deriv(f: Series, v: str) -> Series:
    """d/dv, for a non-Laurent variable."""
    if v == f.trunc.laurent:
        raise SeriesError("deriv on the Laurent variable")
    out = {}
    for m, c in f.coeffs.items():
        d = dict(m)
        k = d.get(v, 0)
        if not k:
            continue
        if k == 1:
            del d[v]
        else:
            d[v] = k - 1
        nm = tuple(sorted(d.items(), key=lambda it: var_key(it[0])))
        val = c * k
        n = out.get(nm)
        out[nm] = val if n is None else n + val
    tr = Trunc(dict(f.trunc.upper), f.trunc.laurent, f.trunc.lower)
    return Series(f.ring, {m: c for m, c in out.items() if c}, tr, _clean=True)


def series_compose(f: Series, g: Series, var: str | None = None) -> Series:
    """f(g) for univariate f; g must have zero constant term."""
    if () in g.coeffs:
        raise SeriesError("composition needs zero constant term in g")
    fvars = {v for m in f.coeffs for v, _ in m}
    if len(fvars) > 1:
        raise SeriesError("composition head must be univariate")
    if var is None:
        var = next(iter(fvars)) if fvars else "t"
    coeffs = {}
    deg = 0
    for m, c in f.coeffs.items():
        e = dict(m).get(var, 0)
        coeffs[e] = c
        deg = max(deg, e)
    tr = g.trunc
    res = Series.zero(g.ring, tr)
    for e in range(deg, -1, -1):
        res = res * g
        c = coeffs.get(e)
        if c:
            res = res + Series.const(g.ring, c, tr)
    return res


def binomial_power(v: str, half_exponent: int, trunc: Trunc) -> Series:
    """(1 + 4*v)^(half_exponent/2) as an exact binomial series."""
    bound = trunc.bound(v)
    if bound is _INF or bound == _INF:
        raise SeriesError("binomial_power needs a finite bound on %r" % v)
    a = rat(half_exponent, 2)
    out = {(): rat(1)}
    c = rat(1)
    for k in range(1, int(bound) + 1):
        c = c * 4 * (a - (k - 1)) / k
        if c:
            out[mono({v: k})] = c
    return Series(RING_Q, out, trunc, _clean=True)


def geometric_sum(v: str, ratio, trunc: Trunc) -> Series:
    """1/(1 - ratio*v) expanded to the truncation bound."""
    bound = int(trunc.bound(v))
    out = {}
    c = rat(1)
    for k in range(bound + 1):
        if c:
            out[mono({v: k})] = c
        c = c * ratio
    return Series(RING_Q, out, trunc, _clean=True)


def sin_series(v: str, trunc: Trunc) -> Series:
    bound = int(trunc.bound(v))
    out = {}
    for i in range(0, (bound + 1) // 2 + 1):
        e = 2 * i + 1
        if e > bound:
            break
        out[mono({v: e})] = rat((-1) ** i, factorial(e))
    return Series(RING_Q, out, trunc, _clean=True)


def arcsin_series(v: str, trunc: Trunc) -> Series:
    bound = int(trunc.bound(v))
    out = {}
    for i in range(0, (bound + 1) // 2 + 1):
        e = 2 * i + 1
        if e > bound:
            break
        c = rat(factorial(2 * i), factorial(i) ** 2)
        out[mono({v: e})] = c / (4 ** i * (2 * i + 1))
    return Series(RING_Q, out, trunc, _clean=True)


# -- Bernoulli numbers ------------------------------------------------

_BERNOULLI = [rat(1)]


def bernoulli(n: int):
    """B_n in the t/(e^t - 1) convention (B_1 = -1/2)."""
    if n < 0:
        raise SeriesError("bernoulli index must be >= 0")
    from .rationals import binomial as binom
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        acc = rat(0)
        for k in range(m):
            acc += binom(m + 1, k) * _BERNOULLI[k]
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]
