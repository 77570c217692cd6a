"""Named verification suites over the desk-scale grids.

Every suite returns {"ok": bool, "checks": [(name, ok, detail)]} with one
entry per checked instance; the first failure carries enough detail to
reproduce it.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

from .rationals import rat, rat_str
from .series import RING_Q, Series, SeriesError, Trunc, bernoulli, mono
from .kappa import KappaPoly, vectorize
from .partitions import aut_order, partition, partitions_up_to
from . import families, faber, fz, ionel, sq

SUITES = ("ionel", "ode", "lemma5", "expanded", "genus-shift", "triviality",
          "prop2", "fz-equiv", "thm1-span")


def worker_count() -> int:
    """Parallelism cap from TAUTRING_THREADS (default 1)."""
    raw = os.environ.get("TAUTRING_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise SeriesError("TAUTRING_THREADS must be a positive integer, "
                          "got %r" % raw)
    if n < 1:
        raise SeriesError("TAUTRING_THREADS must be a positive integer, "
                          "got %r" % raw)
    return n


def _pmap(fn, items):
    """Map preserving order; threads only when the cap allows them."""
    n = worker_count()
    items = list(items)
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _report(checks) -> dict:
    return {"ok": all(ok for _, ok, _ in checks), "checks": checks}


# -- suites ------------------------------------------------------------

def suite_ionel(order: int = 20) -> dict:
    """Bernoulli values on the c-table edge and the c_{k,k} generating
    function, plus the closed-form cross-checks on Gamma."""
    checks = []
    ct = ionel.c_table(order)
    for k in range(2, order + 1):
        want = bernoulli(k) / (k * (k - 1))
        got = ct.get((k - 1, 0), rat(0))
        checks.append(("c[t^%d, 0] = B_%d/%d" % (k, k, k * (k - 1)),
                       got == want,
                       "" if got == want else "got %s want %s"
                       % (rat_str(got), rat_str(want))))
    la = fz.log_a_coeffs(order)
    for k in range(1, order + 1):
        got = ct.get((k, k), rat(0))
        want = la.get(k, rat(0))
        checks.append(("c[%d,%d] = [z^%d] log A" % (k, k, k), got == want,
                       "" if got == want else "got %s want %s"
                       % (rat_str(got), rat_str(want))))
    gx = ionel.gamma_x_check(min(order, 12))
    checks.extend(gx["checks"])
    return _report(checks)


def suite_ode(order: int = 30) -> dict:
    return fz.identity_suite(order)


def suite_lemma5(order: int = 8) -> dict:
    rep = fz.lemma5_check(order, order)
    return _report([("log f linear in y to order (%d,%d)" % (order, order),
                     rep["ok"], rep["detail"])])


def _parity_genus(r: int, size: int, d: int, parity: str) -> Optional[int]:
    """Largest g >= 2 in the window g - 2d - 1 + size < r with the parity
    class requested for expanded_relation."""
    want = (r + size) % 2 if parity == "minus" else (r + size + 1) % 2
    for g in range(r + 2 * d - size, 1, -1):
        if g % 2 == want:
            return g
    return None


def suite_expanded(rmax: int = 8, dmax: int = 5, sigma_max: int = 4) -> dict:
    """Marked-division expansion against |Aut| times the direct Theorem 3
    extraction, both parity classes."""
    sigmas = list(partitions_up_to(sigma_max))
    cells = []
    for r in range(1, rmax + 1):
        for d in range(1, dmax + 1):
            for sg in sigmas:
                for parity in ("plus", "minus"):
                    g = _parity_genus(r, sum(sg), d, parity)
                    if g is not None:
                        cells.append((g, r, d, sg, parity))

    def run(cell):
        g, r, d, sg, parity = cell
        t3 = sq.thm3_relation(g, r, d, sg)
        ex = sq.expanded_relation(g, r, d, sg, parity)
        ok = t3 is not None and ex.poly == t3.poly * aut_order(sg)
        return ("expanded g=%d r=%d d=%d sigma=%s %s" % (g, r, d, sg, parity),
                ok, "" if ok else "mismatch")

    return _report(_pmap(run, cells))


def suite_genus_shift(gmax: int = 14, rmax: int = 7) -> dict:
    """The relation polynomial (kappa_0 symbolic) is the same for g and
    g-2 whenever both are applicable."""
    checks = []
    for g in range(4, gmax + 1):
        for r in range(1, rmax + 1):
            pairs = []
            d = (g + 1) // 2 + 1
            pairs.append(("sq2", sq.thm2_relation(g, r, d),
                          sq.thm2_relation(g - 2, r, d)))
            pairs.append(("sq3", sq.thm3_relation(g, r, d, (1,)),
                          sq.thm3_relation(g - 2, r, d, (1,))))
            pairs.append(("prop3", ionel.prop3_relation(g, r, (1,)),
                          ionel.prop3_relation(g - 2, r, (1,))))
            # thm4 carries the genus inside its (1+4y)^e prefactor; the
            # shift identity crosses one d-slice instead
            t4a = ionel.thm4_relation(g - 2, r, d, ())
            t4b = ionel.thm4_relation(g, r, d, ())
            t4c = ionel.thm4_relation(g - 2, r, d - 1, ())
            if t4a is not None and t4b is not None and t4c is not None:
                ok4 = t4a.poly == t4b.poly + t4c.poly * 4
                checks.append(("thm4 shift g=%d vs g=%d r=%d d=%d"
                               % (g, g - 2, r, d), ok4,
                               "" if ok4 else "recurrence fails"))
            sig_fz = (1,)
            try:
                pairs.append(("fz", fz.thm5_relation(g, r, sig_fz),
                              fz.thm5_relation(g - 2, r, sig_fz)))
            except SeriesError:
                pass
            for name, a, b in pairs:
                if a is None or b is None:
                    continue
                ok = a.poly == b.poly
                checks.append(("%s g=%d vs g=%d r=%d" % (name, g, g - 2, r),
                               ok, "" if ok else "polynomials differ"))
    return _report(checks)


def suite_triviality(gmax: int = 14, rmax: int = 7, sigma_max: int = 4
                     ) -> dict:
    """Below the threshold 3r >= g + 1 + 3|sigma| - 2l(sigma) the
    applicable relations vanish identically after specialization."""
    checks = []
    sigmas = list(partitions_up_to(sigma_max))
    for g in range(2, gmax + 1):
        for r in range(1, rmax + 1):
            for sg in sigmas:
                size, length = sum(sg), len(sg)
                if 3 * r >= g + 1 + 3 * size - 2 * length:
                    continue  # not below the threshold
                d0 = max((g + size - r) // 2 + 1, 1)
                for d in (d0, d0 + 1):
                    if sg:
                        rel = ionel.thm4_relation(g, r, d, sg)
                    else:
                        rel = sq.thm2_relation(g, r, d)
                        rel4 = ionel.thm4_relation(g, r, d, ())
                        if rel4 is not None:
                            z4 = not rel4.poly.specialize_genus(g)
                            checks.append(
                                ("thm4 zero g=%d r=%d d=%d" % (g, r, d),
                                 z4, "" if z4 else "nonzero"))
                    if rel is None:
                        continue
                    z = not rel.poly.specialize_genus(g)
                    checks.append(("%s zero g=%d r=%d d=%d sigma=%s"
                                   % (rel.family, g, r, d, sg), z,
                                   "" if z else "nonzero: %r" %
                                   rel.poly.specialize_genus(g)))
    return _report(checks)


def suite_prop2(sigma_max: int = 3, rmax: int = 5, dmax: int = 3) -> dict:
    """Minus-parity relations as combinations of smaller-partition
    plus-parity relations."""
    cells = []
    for sg in partitions_up_to(sigma_max):
        size = sum(sg)
        for r in range(1, rmax + 1):
            for d in range(1, dmax + 1):
                g = _parity_genus(r, size, d, "minus")
                if g is not None:
                    cells.append((g, r, d, sg))

    def run(cell):
        g, r, d, sg = cell
        rep = sq.prop2_check(g, r, d, sg)
        return ("prop2 g=%d r=%d d=%d sigma=%s" % (g, r, d, sg),
                rep["ok"], "" if rep["ok"] else "no combination found")

    return _report(_pmap(run, cells))


def _unit_triangular_checks(sigma_max: int = 5) -> List[Tuple]:
    checks = []
    table = fz.decompose_sq_in_fz(sigma_max)
    one = KappaPoly.const(1)
    for sg, rows in sorted(table.items()):
        diag_ok = False
        upper_ok = True
        for tau, coeff in rows:
            if sum(tau) > sum(sg):
                upper_ok = False
            if tau == sg:
                terms = dict(coeff.coeffs)
                diag_ok = terms == {(): one} or (not sg and not terms) \
                    or terms == {mono({}): one}
        if not sg:
            diag_ok = True
        ok = diag_ok and upper_ok
        checks.append(("decomposition sigma=%s unit-triangular" % (sg,),
                       ok, "" if ok else
                       "diag=%s upper=%s" % (diag_ok, upper_ok)))
    # the (1,1,1) row, written out
    rows = dict(fz.decompose_sigma((1, 1, 1)))
    want_empty = Series.monomial(
        fz.RING_K, {"z": 1}, KappaPoly.kappa(1, rat(4, 3)), Trunc({"z": 12}))
    want_one = Series.const(
        fz.RING_K, KappaPoly.const(rat(-1, 3)) + KappaPoly.kappa(0, rat(-1, 2)),
        Trunc({"z": 12}))
    got_e = rows.get((), None)
    got_o = rows.get((1,), None)
    got_d = rows.get((1, 1, 1), None)
    ok = (got_e is not None and got_e.coeffs == want_empty.coeffs
          and got_o is not None and got_o.coeffs == want_one.coeffs
          and got_d is not None and got_d.coeffs ==
          {(): KappaPoly.const(1)})
    checks.append(("SQ_(111) row is (4/3)k1 z, -1/3 - k0/2, 1", ok,
                   "" if ok else "rows: %r" % (sorted(rows),)))
    return checks


def suite_fz_equiv(gmax: int = 12, rmax: int = 5) -> dict:
    """Unit-triangular decomposition plus degree-by-degree span equality
    of the stable-quotient and FZ families."""
    checks = _unit_triangular_checks(5)

    cells = [(g, r) for g in range(2, gmax + 1) for r in range(1, rmax + 1)]

    def run(cell):
        g, r = cell
        rep = families.span_report(g, r, "prop3", "fz")
        empty = rep["rows_a"] == 0 and rep["rows_b"] == 0
        ok = rep["equal"] or empty
        tag = "empty" if empty else "rank %d = %d" % (rep["rank_a"],
                                                      rep["rank_b"])
        return ("span prop3 = fz g=%d r=%d (%s)" % (g, r, tag), ok,
                "" if ok else "a_in_b=%s b_in_a=%s"
                % (rep["a_in_b"], rep["b_in_a"]))

    checks.extend(_pmap(run, cells))
    return _report(checks)


def suite_thm1_span(gmax: int = 9, rmax: int = 4) -> dict:
    """Containment of the Theta-family relations in the FZ span, cell by
    cell; failures are reported with the offending instance."""
    cells = [(g, r) for g in range(2, gmax + 1) for r in range(1, rmax + 1)]

    def run(cell):
        g, r = cell
        mfz = families.span_matrix("fz", g, r)
        rels = families.grid_relations("faber", g, r)
        misses = []
        nonzero = 0
        for rel in rels:
            p = rel.poly.specialize_genus(g)
            if not p:
                continue
            nonzero += 1
            ok, _ = mfz.span_contains(vectorize(p, r))
            if not ok:
                misses.append((rel.d, rel.sigma))
        ok = not misses
        return ("faber in span(fz) g=%d r=%d (%d relations)"
                % (g, r, nonzero), ok,
                "" if ok else "NOT CONTAINED: %r" % misses[:5])

    return _report(_pmap(run, cells))


def run_suite(name: str, order: Optional[int] = None,
              gmax: Optional[int] = None, rmax: Optional[int] = None
              ) -> dict:
    """Dispatch by CLI suite name, applying only the supplied bounds."""
    def args(**defaults):
        out = dict(defaults)
        if order is not None and "order" in out:
            out["order"] = order
        if gmax is not None and "gmax" in out:
            out["gmax"] = gmax
        if rmax is not None and "rmax" in out:
            out["rmax"] = rmax
        return out

    if name == "ionel":
        return suite_ionel(**args(order=20))
    if name == "ode":
        return suite_ode(**args(order=30))
    if name == "lemma5":
        return suite_lemma5(**args(order=8))
    if name == "expanded":
        kw = {}
        if rmax is not None:
            kw["rmax"] = rmax
        return suite_expanded(**kw)
    if name == "genus-shift":
        return suite_genus_shift(**args(gmax=14, rmax=7))
    if name == "triviality":
        return suite_triviality(**args(gmax=14, rmax=7))
    if name == "prop2":
        kw = {}
        if rmax is not None:
            kw["rmax"] = rmax
        return suite_prop2(**kw)
    if name == "fz-equiv":
        return suite_fz_equiv(**args(gmax=12, rmax=5))
    if name == "thm1-span":
        return suite_thm1_span(**args(gmax=9, rmax=4))
    raise SeriesError("unknown suite %r" % (name,))
