import json

from istrkit.cli import main

KEYS = {"kind", "status", "witness", "exhaustive", "nodes", "millis"}


def run(capsys, *argv):
    rc = main(["--records", *argv])
    recs = [json.loads(ln) for ln in capsys.readouterr().out.splitlines() if ln.strip()]
    for r in recs:
        assert KEYS <= set(r)
    return rc, recs


def test_represent_232(capsys):
    rc, recs = run(capsys, "represent", "--field", "K49", "--diag", "1,71", "--target", "232,0,0")
    assert rc == 0
    wits = [r["witness"] for r in recs if r["kind"] == "witness"]
    assert [[-16, -1, 4], [0, 1, 0]] in wits and len(wits) == 12
    summary = recs[-1]
    assert summary["exhaustive"] is True and summary["nodes"] > 0


def test_istr_check_and_local_evidence(capsys):
    rc, recs = run(capsys, "istr-check", "--ext", "K49", "--diag", "1,1,1,37", "--target", "124")
    assert rc == 0
    assert recs[-1]["kind"] == "istr-check" and recs[-1]["status"] == "FAILS_ISTR"
    assert any(r["kind"] == "local-evidence" for r in recs)


def test_istr_check_sqrt13_with_image(capsys):
    rc, recs = run(capsys, "istr-check", "--base", "Q13", "--ext", "L13", "--image", "5,-4,-8,2,2,0",
                   "--diag", "1,1,1,1", "--target", "10,4")
    assert rc == 0 and recs[-1]["status"] == "FAILS_ISTR"


def test_bad_image_rejected(capsys):
    rc = main(["istr-check", "--base", "Q13", "--ext", "L13", "--image", "1,0,0,0,0,0", "--diag", "1,1", "--target", "1,0"])
    assert rc == 2


def test_obstruction(capsys):
    rc, recs = run(capsys, "obstruction", "--diag", "1,2,5,5", "--target", "15")
    assert rc == 0 and recs[-1]["status"] == "proof"
    assert sum(r["kind"] == "case" for r in recs) == 4
    rc, recs = run(capsys, "obstruction", "--diag", "1,1,1", "--target", "15")
    assert rc == 0 and recs[-1]["status"] == "unknown"
    rc, recs = run(capsys, "obstruction", "--diag", "1,2,5,5", "--target", "14")
    assert rc == 0 and recs[-1]["status"] == "represented"


def test_enum_and_failure_fields(capsys):
    rc, recs = run(capsys, "enum-totally-real", "--degree", "3", "--min-degree", "3", "--house", "2", "--irreducible")
    assert rc == 0 and recs[-1]["count"] == 4
    rc, recs = run(capsys, "failure-fields", "--diag", "1,71", "--target", "232")
    assert rc == 0 and recs[-1]["count"] == 1
    rc, recs = run(capsys, "failure-fields", "--diag", "1", "--target", "9")
    assert rc == 0 and recs[-1]["status"] == "represented"


def test_local_and_dyadic(capsys):
    rc, recs = run(capsys, "local", "--diag", "1,1,1", "--target", "7", "--place", "2")
    assert rc == 0 and recs[-1]["status"] == "false"
    rc, recs = run(capsys, "local", "--diag", "1,1,1", "--target", "7", "--place", "inf")
    assert recs[-1]["status"] == "true"
    rc, recs = run(capsys, "dyadic-square", "4,0,0")
    assert rc == 0 and recs[-1]["status"] == "true"


def test_scan_fields_with_table(tmp_path, capsys):
    t = tmp_path / "t.txt"
    t.write_text("# source: external\nK49|3|49|-1,-2,1,1|1,0,0;0,1,0;0,0,1\nbad|3|49|x\n")
    rc, recs = run(capsys, "scan-fields", "--diag", "1,71", "--targets", "232", "--table", str(t))
    assert rc == 0
    assert [r["status"] for r in recs] == ["FAILS_ISTR", "error", "done"]


def test_field_info_poly(capsys):
    rc, recs = run(capsys, "field-info", "poly:-1,-4,0,1")
    assert rc == 0 and recs[-1]["disc"] == 229


def test_malformed_inputs(tmp_path, capsys):
    assert main(["represent", "--diag", "1,x", "--target", "3"]) == 2
    assert main(["represent", "--field", "K49", "--diag", "1,1", "--target", "3"]) == 2
    assert main(["field-info", "poly:1,2,2"]) == 2
    assert main(["represent", "--form", str(tmp_path / "missing"), "--target", "3"]) == 2
    f = tmp_path / "f.txt"
    f.write_text("2\n1 0\n")
    assert main(["represent", "--form", str(f), "--target", "3"]) == 2
    capsys.readouterr()


def test_paper_suite_subset(capsys):
    rc, recs = run(capsys, "paper-suite", "--only", "1,2")
    assert rc == 0
    items = [r for r in recs if r["kind"] == "suite-item"]
    assert [r["key"] for r in items] == ["1", "2"] and all(r["status"] == "PASS" for r in items)
    rc, recs = run(capsys, "paper-suite", "--only", "2", "--node-cap", "5")
    assert rc == 0 and recs[0]["status"] == "INCONCLUSIVE"


def test_omega_shift(capsys):
    rc, recs = run(capsys, "omega-shift", "--m", "14", "--max", "60", "--count", "1")
    assert rc == 0 and recs[0]["target"] == 47 and recs[-1]["count"] == 1
