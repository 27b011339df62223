import json
from pathlib import Path

import pytest

from tiltlab.cli import main
from tiltlab.reporting import validate_report_dict
from tiltlab.textio import corpus_entry_to_text

DATA = Path(__file__).resolve().parents[1] / "src" / "tiltlab" / "data" / "inputs"


@pytest.fixture()
def a2_file(tmp_path):
    p = tmp_path / "a2.alg"
    p.write_text(corpus_entry_to_text("a2_q"))
    return p


def test_check_tilting_pass(a2_file, tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["check-tilting", str(a2_file), "--json", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    validate_report_dict(doc)
    assert doc["summary"]["fail"] == 0
    assert doc["command"] == "check-tilting"


def test_check_tilting_negative_control(tmp_path):
    text = corpus_entry_to_text("a2_q")
    # redeclare the tilting candidate as the non-sincere simple M22
    text = text.replace("tilting T = TILT", "tilting T = M22")
    p = tmp_path / "bad.alg"
    p.write_text(text)
    out = tmp_path / "r.json"
    code = main(["check-tilting", str(p), "--json", str(out)])
    assert code == 1
    doc = json.loads(out.read_text())
    failing = [r for r in doc["records"] if r["status"] == "fail"]
    assert failing
    assert "coresolution" in failing[0]["detail"]


def test_check_tilting_no_candidates(tmp_path, capsys):
    p = tmp_path / "empty.alg"
    p.write_text("field Q\n")
    code = main(["check-tilting", str(p)])
    assert code == 0
    assert "nothing to check" in capsys.readouterr().out


def test_verify_bb_negative_control(tmp_path):
    text = corpus_entry_to_text("a2_q").replace("tilting T = TILT",
                                                "tilting T = M11 + M22")
    p = tmp_path / "bad.alg"
    p.write_text(text)
    out = tmp_path / "r.json"
    code = main(["verify-bb", str(p), "--json", str(out)])
    assert code == 1
    doc = json.loads(out.read_text())
    assert doc["summary"]["fail"] >= 1


def test_verify_bb_unknown_probe(a2_file):
    code = main(["verify-bb", str(a2_file), "--probes", "NOPE"])
    assert code == 2


def test_verify_bb_shipped_inputs_pass(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify-bb", str(DATA / "a2_f2.alg"), "--ore", "12",
                 "--ses", "20", "--json", str(out)])
    assert code == 0


def test_verify_derived_small(a2_file, tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify-derived", str(a2_file), "--samples", "6",
                 "--window=-1..1", "--json", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    validate_report_dict(doc)


def test_verify_derived_bad_window(a2_file):
    assert main(["verify-derived", str(a2_file), "--window", "oops"]) == 2


def test_malformed_complex_names_degree(tmp_path):
    src = """field Q
algebra A2 quiver
vertices 2
arrow a 1 2
end
module P1 over A2
vertexdims 1 1
arrow a = 1
end
module X over A2
vertexdims 1 0
end
tilting T = P1
complex C over A2
term 0 = P1
term 1 = P1
term 2 = P1
d 0 = 1 0 ; 0 1
d 1 = 1 0 ; 0 1
end
"""
    p = tmp_path / "bad.alg"
    p.write_text(src)
    import subprocess, sys
    code = main(["verify-derived", str(p), "--samples", "1"])
    assert code == 2


def test_digest_changes_with_input(a2_file, tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    main(["check-tilting", str(a2_file), "--json", str(out1)])
    other = tmp_path / "a2b.alg"
    other.write_text(a2_file.read_text() + "\n# trailing comment\n")
    main(["check-tilting", str(other), "--json", str(out2)])
    d1 = json.loads(out1.read_text())
    d2 = json.loads(out2.read_text())
    assert d1["input_digest"] != d2["input_digest"]


def test_report_roundtrip_bit_identical(a2_file, tmp_path):
    out = tmp_path / "r.json"
    main(["check-tilting", str(a2_file), "--json", str(out)])
    re1 = tmp_path / "re1.json"
    code = main(["report", "--from", str(out), "--json", str(re1)])
    assert code == 0
    assert out.read_text() == re1.read_text()


def test_report_schema_validates(a2_file, tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    out = tmp_path / "r.json"
    main(["verify-bb", str(a2_file), "--ore", "5", "--ses", "8",
          "--json", str(out)])
    schema = json.loads((DATA.parent / "report-schema.json").read_text())
    jsonschema.validate(json.loads(out.read_text()), schema)


def test_determinism_modulo_timings(a2_file, tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    main(["verify-bb", str(a2_file), "--ore", "10", "--ses", "10",
          "--seed", "3", "--json", str(out1)])
    main(["verify-bb", str(a2_file), "--ore", "10", "--ses", "10",
          "--seed", "3", "--json", str(out2)])
    d1 = json.loads(out1.read_text())
    d2 = json.loads(out2.read_text())
    for r in d1["records"] + d2["records"]:
        r.pop("elapsed_ms")
    assert d1 == d2
