import json

import pytest

from morita.cli import main


@pytest.fixture()
def corpus_dir(tmp_path):
    rc = main(["corpus", str(tmp_path / "corpus")])
    assert rc == 0
    return tmp_path / "corpus"


def run(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr().out
    return rc, out


def test_validate(corpus_dir, tmp_path, capsys):
    rc, out = run(capsys, ["validate", str(corpus_dir / "brandt_1_2.smg")])
    assert rc == 0 and "verdict=pass" in out
    bad = tmp_path / "bad.smg"
    bad.write_text("3\na b c\nc c c\nb b c\na b c\n", encoding="utf-8")
    rc, out = run(capsys, ["validate", str(bad)])
    assert rc == 1 and "verdict=fail" in out and "associativity" in out
    garbage = tmp_path / "garbage.smg"
    garbage.write_text("not a table\n", encoding="utf-8")
    assert main(["validate", str(garbage)]) == 2
    # a non-inverse but associative table fails the inverse checks
    leftzero = tmp_path / "leftzero.smg"
    leftzero.write_text("2\na b\na a\nb b\n", encoding="utf-8")
    rc, out = run(capsys, ["validate", str(leftzero)])
    assert rc == 1 and "IdempotentsDontCommute" in out


def test_analyze(corpus_dir, tmp_path, capsys):
    rc, out = run(capsys, ["analyze", str(corpus_dir / "brandt_1_2.smg"),
                           "--emit-l", str(tmp_path / "l.cat"),
                           "--emit-c", str(tmp_path / "c.cat")])
    assert rc == 0
    assert "check=idempotents status=info value=3" in out
    assert "check=L_morphisms status=info value=7" in out
    assert "check=C_morphisms status=info value=13" in out
    assert "locally_e_unitary status=info value=true" in out
    from morita.formats import parse_category

    L = parse_category((tmp_path / "l.cat").read_text(encoding="utf-8"))
    assert L.n_mor == 7
    rc, out = run(capsys, ["analyze", str(corpus_dir / "cyclic1.smg")])
    assert rc == 0 and "check=idempotents status=info value=1" in out
    assert "natural_order_hasse_edges status=info value=0" in out


def test_morita_verdicts(corpus_dir, capsys):
    rc, out = run(capsys, ["morita", str(corpus_dir / "brandt_1_2.smg"),
                           str(corpus_dir / "brandt_1_3.smg")])
    assert rc == 0 and "verdict=true" in out and "witness_forward status=ok" in out
    rc, out = run(capsys, ["--max-points", "4", "morita",
                           str(corpus_dir / "cyclic2.smg"),
                           str(corpus_dir / "cyclic3.smg"), "--oracle"])
    assert rc == 0 and "verdict=false" in out
    assert "oracle_biset_search status=ok" in out


def test_enlarge_biset_check_and_enlargement(corpus_dir, tmp_path, capsys):
    rc, out = run(capsys, ["enlarge", str(corpus_dir / "brandt_1_2.smg"),
                           "--left", "(1,1) 0", "--right", "all",
                           "--emit-biset", str(tmp_path / "b.biset")])
    assert rc == 0 and "check=points status=info value=3" in out
    rc, out = run(capsys, ["biset-check", str(tmp_path / "b.biset")])
    assert rc == 0 and "check=M7 status=ok" in out
    rc, out = run(capsys, ["biset-enlarge", str(tmp_path / "b.biset"),
                           "--emit-ogpd", str(tmp_path / "g.ogpd")])
    assert rc == 0
    for check in ("bipartite", "morita_context", "enlargement_of_S",
                  "enlargement_of_T", "roundtrip_biset"):
        assert f"check={check} status=ok" in out
    from morita.formats import parse_ordered_groupoid

    G = parse_ordered_groupoid((tmp_path / "g.ogpd").read_text(encoding="utf-8"))
    assert G.n_arrows == 13


def test_psh_equiv(corpus_dir, capsys):
    rc, out = run(capsys, ["psh-equiv", str(corpus_dir / "chain2.smg"),
                           "--samples", "4"])
    assert rc == 0 and "verdict=pass" in out
    assert "unit_iso_sample_3 status=ok" in out
    rc2, out2 = run(capsys, ["--parallel", "2", "psh-equiv",
                             str(corpus_dir / "chain2.smg"), "--samples", "4"])
    assert rc2 == 0 and out2 == out


def test_json_format(corpus_dir, capsys):
    rc, out = run(capsys, ["--format", "json", "analyze",
                           str(corpus_dir / "chain2.smg")])
    assert rc == 0
    payload = json.loads(out)
    assert payload["verdict"] == "pass"
    assert any(d["check"] == "L_morphisms" for d in payload["details"])


def test_corpus_manifest(corpus_dir):
    manifest = (corpus_dir / "manifest.tsv").read_text(encoding="utf-8")
    assert "brandt_1_2\tbrandt_1_3\ttrue" in manifest
    assert "chain2\tchain3\tfalse" in manifest
    assert (corpus_dir / "syminv2.smg").exists()


def test_exit_code_missing_file():
    assert main(["validate", "/nonexistent/path.smg"]) == 2
