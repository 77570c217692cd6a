"""Command-line front end: gen, verify, span, tables.

Exit codes: 0 success, 1 verification failure, 2 usage error.  Output is
deterministic for identical flags; JSON carries exact fractions as
"num/den" strings, never floats.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .rationals import rat_str
from .series import SeriesError
from .kappa import kappa_partitions, kmono, kmono_str, vectorize
from .partitions import partition
from . import families, fz, ionel, sq, verify

SCHEMA_VERSION = 1
USAGE_ERROR = 2


class UsageError(Exception):
    pass


def parse_sigma(text: str, family: str):
    """CSV of positive parts; the faber family takes i:j index pairs."""
    text = (text or "").strip()
    if not text:
        return ()
    items = [s.strip() for s in text.split(",") if s.strip()]
    if family == "faber":
        pairs = {}
        for item in items:
            if ":" not in item:
                raise UsageError("faber sigma entries are i:j pairs, got %r"
                                 % item)
            i, j = item.split(":", 1)
            try:
                key = (int(i), int(j))
            except ValueError:
                raise UsageError("bad z-index pair %r" % item)
            pairs[key] = pairs.get(key, 0) + 1
        try:
            from .faber import zmono
            return zmono(pairs)
        except SeriesError as exc:
            raise UsageError(str(exc))
    try:
        parts = [int(s) for s in items]
    except ValueError:
        raise UsageError("sigma parts must be integers, got %r" % text)
    if any(p < 1 for p in parts):
        raise UsageError("sigma parts must be positive, got %r" % text)
    if family == "fz" and any(p % 3 == 2 for p in parts):
        raise UsageError("family fz forbids parts congruent to 2 mod 3")
    return partition(parts)


def sigma_json(family: str, sigma) -> list:
    if family == "faber":
        out = []
        for (i, j), mult in sigma:
            out.extend([[i, j]] * mult)
        return out
    return list(sigma)


def relation_document(family: str, g: int, r: int, d: Optional[int],
                      sigma, rel) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "family": family,
           "g": g, "r": r, "d": d, "sigma": sigma_json(family, sigma)}
    if rel is None:
        doc["status"] = "inapplicable"
        return doc
    poly = rel.poly.specialize_genus(g)
    basis = kappa_partitions(r)
    doc["status"] = "ok"
    doc["genus_specialized"] = True
    doc["basis"] = [list(p) for p in basis]
    doc["coefficients"] = [rat_str(c) for c in vectorize(poly, r)]
    return doc


def document_poly(doc: dict):
    """Rebuild the KappaPoly of an exported document (round-trip)."""
    from .kappa import KappaPoly
    from .rationals import parse_rat
    terms = {}
    for parts, c in zip(doc["basis"], doc["coefficients"]):
        exps = {}
        for p in parts:
            exps[p] = exps.get(p, 0) + 1
        terms[kmono(exps)] = parse_rat(c)
    return KappaPoly(terms)


def format_text(doc: dict) -> str:
    head = "%s g=%d r=%d" % (doc["family"], doc["g"], doc["r"])
    if doc.get("d") is not None:
        head += " d=%d" % doc["d"]
    if doc["sigma"]:
        head += " sigma=%s" % (doc["sigma"],)
    if doc["status"] != "ok":
        return head + ": inapplicable"
    bits = []
    for parts, c in zip(doc["basis"], doc["coefficients"]):
        if c == "0":
            continue
        exps = {}
        for p in parts:
            exps[p] = exps.get(p, 0) + 1
        bits.append("(%s)*%s" % (c, kmono_str(kmono(exps))))
    body = " + ".join(bits) if bits else "0"
    return head + ":\n  " + body


def cmd_gen(args) -> int:
    family = args.family
    sigma = parse_sigma(args.sigma, family)
    size = sum(j * m for (_, j), m in sigma) if family == "faber" \
        else sum(sigma)
    needs_d = family in ("faber", "sq2", "sq3", "thm4")
    if needs_d and args.d is None and not args.all_d:
        raise UsageError("family %s needs --d or --all-d" % family)
    if not needs_d and (args.d is not None or args.all_d):
        raise UsageError("family %s takes no d" % family)
    if args.all_d:
        ds: List[Optional[int]] = list(
            families.d_range(family, args.g, args.r, size))
    else:
        ds = [args.d]
    docs = []
    for d in ds:
        try:
            rel = families.single_relation(family, args.g, args.r, d, sigma)
        except SeriesError as exc:
            raise UsageError(str(exc))
        docs.append(relation_document(family, args.g, args.r, d, sigma, rel))
    if args.format == "json":
        payload = json.dumps(docs, indent=2, sort_keys=True) + "\n"
    else:
        payload = "\n".join(format_text(doc) for doc in docs) + "\n"
    if args.out == "-":
        sys.stdout.write(payload)
    else:
        with open(args.out, "w") as fh:
            fh.write(payload)
    return 0


def cmd_verify(args) -> int:
    rep = verify.run_suite(args.suite, order=args.order, gmax=args.gmax,
                           rmax=args.rmax)
    for name, ok, detail in rep["checks"]:
        line = "%s %s" % ("PASS" if ok else "FAIL", name)
        if detail and not ok:
            line += " -- " + detail
        print(line)
    n = len(rep["checks"])
    good = sum(1 for _, ok, _ in rep["checks"] if ok)
    print("suite %s: %d/%d checks passed" % (args.suite, good, n))
    return 0 if rep["ok"] else 1


def cmd_span(args) -> int:
    if ":" not in args.compare:
        raise UsageError("--compare expects A:B")
    fam_a, fam_b = args.compare.split(":", 1)
    for fam in (fam_a, fam_b):
        if fam not in families.FAMILY_NAMES:
            raise UsageError("unknown family %r" % fam)
    rep = families.span_report(args.g, args.r, fam_a, fam_b,
                               certify=args.certify)
    print("span comparison at g=%d r=%d" % (args.g, args.r))
    print("  %s: %d rows, rank %d" % (fam_a, rep["rows_a"], rep["rank_a"]))
    print("  %s: %d rows, rank %d" % (fam_b, rep["rows_b"], rep["rank_b"]))
    print("  %s in %s: %s" % (fam_a, fam_b, rep["a_in_b"]))
    print("  %s in %s: %s" % (fam_b, fam_a, rep["b_in_a"]))
    print("  verdict: %s" % ("equal" if rep["equal"] else "not equal"))
    for key in ("missing_a_in_b", "missing_b_in_a"):
        for label in rep[key]:
            print("  outside span: %s" % label)
    if args.certify:
        for direction in ("a_in_b", "b_in_a"):
            for label, coeffs in rep["certificates"][direction]:
                nz = [(i, rat_str(c)) for i, c in enumerate(coeffs) if c]
                print("  certificate[%s] %s: %s" % (direction, label, nz))
    return 0


def cmd_tables(args) -> int:
    n = args.max
    lines = []
    if args.which == "q":
        for (k, j), v in sorted(ionel.q_table(n).items()):
            lines.append("q[%d,%d] = %s" % (k, j, rat_str(v)))
    elif args.which == "c":
        for (k, j), v in sorted(ionel.c_table(n).items()):
            lines.append("c[%d,%d] = %s" % (k, j, rat_str(v)))
    elif args.which == "cn":
        for (nn, k, j), v in sorted(ionel.cn_table(n, n).items()):
            lines.append("c^%d[%d,%d] = %s" % (nn, k, j, rat_str(v)))
    elif args.which == "b":
        for (nn, j), v in sorted(ionel.b_coeffs(n).items()):
            lines.append("b^%d[%d] = %s" % (nn, j, rat_str(v)))
    elif args.which == "Crd":
        for (d, r), v in sorted(sq.log_phi_coeffs(n, n).items()):
            lines.append("C^%d_%d = %s" % (r, d, rat_str(v)))
    elif args.which == "CrSigma":
        for (sig, r), v in sorted(fz.psi_log_coeffs(n, n).items()):
            lines.append("C^%d%s = %s" % (r, list(sig), rat_str(v)))
    print("\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tautring",
        description="Exact constructors and verifiers for kappa-class "
                    "relation families.")
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate relation documents")
    gen.add_argument("--family", required=True,
                     choices=list(families.FAMILY_NAMES))
    gen.add_argument("--g", type=int, required=True)
    gen.add_argument("--r", type=int, required=True)
    gen.add_argument("--d", type=int, default=None)
    gen.add_argument("--sigma", default="",
                     help="CSV of parts; i:j pairs for family faber")
    gen.add_argument("--all-d", action="store_true", dest="all_d")
    gen.add_argument("--specialize", action="store_true",
                     help="emit genus-specialized coefficients (the "
                          "default; documents are always specialized)")
    gen.add_argument("--out", default="-")
    gen.add_argument("--format", choices=["json", "text"], default="json")
    gen.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("--suite", required=True, choices=list(verify.SUITES))
    ver.add_argument("--order", type=int, default=None)
    ver.add_argument("--gmax", type=int, default=None)
    ver.add_argument("--rmax", type=int, default=None)
    ver.set_defaults(func=cmd_verify)

    spn = sub.add_parser("span", help="compare two family spans")
    spn.add_argument("--g", type=int, required=True)
    spn.add_argument("--r", type=int, required=True)
    spn.add_argument("--compare", required=True, metavar="A:B")
    spn.add_argument("--certify", action="store_true")
    spn.set_defaults(func=cmd_span)

    tab = sub.add_parser("tables", help="dump a coefficient table")
    tab.add_argument("--which", required=True,
                     choices=["q", "c", "cn", "b", "Crd", "CrSigma"])
    tab.add_argument("--max", type=int, required=True)
    tab.set_defaults(func=cmd_tables)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        verify.worker_count()  # validates TAUTRING_THREADS up front
        return args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return USAGE_ERROR
    except SeriesError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
