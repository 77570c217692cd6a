import json

import pytest

from tautring.cli import (build_parser, document_poly, main, parse_sigma)
from tautring.fz import thm5_relation


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_json_roundtrip(capsys, tmp_path):
    path = tmp_path / "rel.json"
    code, _, _ = run_cli(capsys, "gen", "--family", "fz", "--g", "3",
                         "--r", "2", "--out", str(path))
    assert code == 0
    docs = json.loads(path.read_text())
    assert len(docs) == 1
    doc = docs[0]
    assert doc["status"] == "ok"
    assert doc["genus_specialized"] is True
    want = thm5_relation(3, 2, ()).poly.specialize_genus(3)
    assert document_poly(doc) == want


def test_gen_inapplicable_record(capsys):
    code, out, _ = run_cli(capsys, "gen", "--family", "sq2", "--g", "5",
                           "--r", "2", "--d", "1")
    assert code == 0
    docs = json.loads(out)
    assert docs[0]["status"] == "inapplicable"


def test_gen_bad_sigma_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "gen", "--family", "fz", "--g", "3",
                           "--r", "2", "--sigma", "2")
    assert code == 2
    assert "2 mod 3" in err


def test_gen_missing_d_is_usage_error(capsys):
    code, _, _ = run_cli(capsys, "gen", "--family", "sq2", "--g", "3",
                         "--r", "2")
    assert code == 2


def test_gen_determinism(capsys, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    for p in (p1, p2):
        code, _, _ = run_cli(capsys, "gen", "--family", "prop3", "--g", "3",
                             "--r", "2", "--out", str(p))
        assert code == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_parse_sigma_forms():
    assert parse_sigma("3,1,1", "prop3") == (3, 1, 1)
    assert parse_sigma("", "prop3") == ()
    zm = parse_sigma("1:1,1:1,2:2", "faber")
    assert zm == (((1, 1), 2), ((2, 2), 1))


def test_tables_values(capsys):
    code, out, _ = run_cli(capsys, "tables", "--which", "q", "--max", "2")
    assert code == 0
    assert "q[1,1] = 5" in out
    code, out, _ = run_cli(capsys, "tables", "--which", "b", "--max", "2")
    assert "b^1[0] = 1/2" in out


def test_span_self_equal(capsys):
    code, out, _ = run_cli(capsys, "span", "--g", "3", "--r", "2",
                           "--compare", "fz:fz")
    assert code == 0
    assert "verdict: equal" in out


def test_verify_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "lemma5",
                           "--order", "5")
    assert code == 0
    assert "PASS" in out


def test_unknown_suite_is_usage_error(capsys):
    code, _, _ = run_cli(capsys, "verify", "--suite", "nope")
    assert code == 2


def test_threads_env_validation(capsys, monkeypatch):
    monkeypatch.setenv("TAUTRING_THREADS", "zero")
    code, _, err = run_cli(capsys, "tables", "--which", "q", "--max", "1")
    assert code == 2
    assert "TAUTRING_THREADS" in err
    monkeypatch.setenv("TAUTRING_THREADS", "2")
    code, _, _ = run_cli(capsys, "tables", "--which", "q", "--max", "1")
    assert code == 0


def test_text_format(capsys):
    code, out, _ = run_cli(capsys, "gen", "--family", "fz", "--g", "3",
                           "--r", "2", "--format", "text")
    assert code == 0
    assert "k2" in out and "k1^2" in out


def test_parser_subcommands():
    ap = build_parser()
    args = ap.parse_args(["gen", "--family", "fz", "--g", "3", "--r", "2"])
    assert args.family == "fz" and not args.all_d
