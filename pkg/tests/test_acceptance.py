"""End-to-end acceptance checks, one per criterion, each printing a
single PASS/FAIL line."""

import random
import time

from tautring.rationals import rat
from tautring.series import RING_Q, Series, Trunc, bernoulli, mono
from tautring.fz import log_a_coeffs
from tautring.ionel import b_coeffs, c_table, cn_table, df_odd, uy_extract
from tautring import verify


def _line(num, ok, desc):
    print("CRITERION %d: %s -- %s" % (num, "PASS" if ok else "FAIL", desc))
    assert ok, "criterion %d failed: %s" % (num, desc)


def _failures(rep):
    return [c for c in rep["checks"] if not c[1]][:5]


def test_criterion_1_ionel_suite():
    t0 = time.time()
    ct = c_table(20)
    bern_ok = all(ct.get((k - 1, 0), rat(0)) == bernoulli(k) / (k * (k - 1))
                  for k in range(2, 21))
    la = log_a_coeffs(20)
    gen_ok = all(ct.get((k, k), rat(0)) == la.get(k, rat(0))
                 for k in range(1, 21))
    elapsed = time.time() - t0
    ok = bern_ok and gen_ok and elapsed < 10
    _line(1, ok, "Bernoulli edge and c_{k,k} generating function to order "
          "20 (%.2fs)" % elapsed)


def test_criterion_2_ode_suite():
    rep = verify.suite_ode(30)
    _line(2, rep["ok"], "A/B/C differential and sine-series identities; "
          "failures: %r" % _failures(rep))


def test_criterion_3_lemma_suite():
    b = b_coeffs(8)
    b_ok = all(b.get((n, n - 1), rat(0)) ==
               rat(-df_odd(2 * n - 5), 4) * 2 ** n
               for n in range(1, 9))

    cn = cn_table(6, 8)
    corner_ok = all(cn.get((n, 0, n), rat(0)) ==
                    rat(4) ** (n - 1) * [1, 1, 1, 2, 6, 24, 120][n]
                    for n in range(1, 7))
    ct = c_table(8)
    edge_ok = True
    for n in range(1, 6):
        for k in range(1, 9):
            want = ct[(k, k)]
            for m in range(n):
                want = want * (6 * k + 4 * m)
            if cn.get((n, k, k + n), rat(0)) != want:
                edge_ok = False

    rng = random.Random(7)
    rand_ok = True
    for _ in range(50):
        tr = Trunc({"t": 5, "x": 5})
        coeffs = {}
        for a in range(6):
            for bb in range(6):
                if rng.random() < 0.4:
                    coeffs[mono({"t": a, "x": bb})] = rat(
                        rng.randint(-9, 9), rng.randint(1, 9))
        P = Series(RING_Q, coeffs, tr)
        r = rng.randint(0, 5)
        d = rng.randint(0, 5)
        got = uy_extract(P, r, d)
        # direct scalar evaluation of the same transfer
        want = rat(0)
        for m, c in coeffs.items():
            e = dict(m)
            a, bb = e.get("t", 0), e.get("x", 0)
            if a != r or bb > d:
                continue
            h = rat((r + 2 * d - 2) - a - 2 * bb, 2)
            k = d - bb
            binom = rat(1)
            for i in range(k):
                binom = binom * (h - i) / (i + 1)
            want += c * (-1) ** bb * binom * rat(4) ** k
        want = want * (-1) ** d
        if got != want:
            rand_ok = False
    ok = b_ok and corner_ok and edge_ok and rand_ok
    _line(3, ok, "b and c^n lemma values plus 50 randomized coefficient "
          "transfers (b=%s corner=%s edge=%s random=%s)"
          % (b_ok, corner_ok, edge_ok, rand_ok))


def test_criterion_4_structure_suite():
    exp = verify.suite_expanded(rmax=8, dmax=5, sigma_max=4)
    triv = verify.suite_triviality(gmax=14, rmax=7, sigma_max=4)
    shift = verify.suite_genus_shift(gmax=14, rmax=7)
    ok = exp["ok"] and triv["ok"] and shift["ok"]
    _line(4, ok, "expanded=|Aut|*direct (%d), triviality (%d), genus shift "
          "(%d); failures: %r"
          % (len(exp["checks"]), len(triv["checks"]), len(shift["checks"]),
             _failures(exp) + _failures(triv) + _failures(shift)))


def test_criterion_5_equivalence_suite():
    t0 = time.time()
    lem = verify.suite_lemma5(8)
    equiv = verify.suite_fz_equiv(gmax=12, rmax=5)
    elapsed = time.time() - t0
    ok = lem["ok"] and equiv["ok"] and elapsed < 300
    _line(5, ok, "triangular decomposition, Lemma 5 at (8,8), span "
          "equality g<=12 r<=5 (%.1fs); failures: %r"
          % (elapsed, _failures(lem) + _failures(equiv)))


def test_criterion_6_cross_family_suite():
    rep = verify.suite_thm1_span(gmax=9, rmax=4)
    for name, ok, detail in rep["checks"]:
        print("  cell %s: %s %s" % (name, "PASS" if ok else "FAIL", detail))
    _line(6, rep["ok"], "Theta-family relations inside the FZ span, "
          "%d cells" % len(rep["checks"]))


def test_criterion_7_prop2_suite():
    rep = verify.suite_prop2(sigma_max=3, rmax=5, dmax=3)
    ok = rep["ok"] and len(rep["checks"]) > 0
    _line(7, ok, "minus-parity relations expressed through smaller "
          "plus-parity relations (%d instances); failures: %r"
          % (len(rep["checks"]), _failures(rep)))
