import json

import jsonschema
import pytest

from fitset import cli, harness
from fitset.errors import ArgumentError, ParseError
from fitset.harness import (
    Report,
    default_corpus,
    emit_report,
    load_corpus,
    run_entry,
    run_suite,
    select_suites,
    strip_timing,
)
from fitset.injectors import TheoremReport

S3_SPEC = {"name": "S3", "degree": 3, "generators": [[[1, 2]], [[1, 2, 3]]]}
S4_SPEC = {"name": "S4", "degree": 4, "generators": [[[1, 2]], [[1, 2, 3, 4]]]}


@pytest.fixture
def files(tmp_path):
    g = tmp_path / "s4.json"
    g.write_text(json.dumps({"group": S4_SPEC}))
    nil = tmp_path / "nil.json"
    nil.write_text(json.dumps({"kind": "trace", "class": {"name": "nilpotent"}}))
    sol2 = tmp_path / "sol2.json"
    sol2.write_text(json.dumps({"kind": "trace", "class": {"name": "soluble_pi", "pi": [2]}}))
    triv = tmp_path / "triv.json"
    triv.write_text(json.dumps({"kind": "trivial"}))
    return {"group": str(g), "nil": str(nil), "sol2": str(sol2), "trivial": str(triv)}


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_default_corpus_has_nine_entries():
    entries = load_corpus(default_corpus())
    assert [e.group_spec["name"] for e in entries] == [
        "S3", "C6", "D8", "Q8", "A4", "S4", "SL(2,3)", "S3xS3", "A5"]
    assert all(len(e.digest) == 64 for e in entries)


def test_empty_corpus(tmp_path):
    assert load_corpus(tmp_path) == []


def test_malformed_json_names_file(tmp_path):
    (tmp_path / "bad.json").write_text('{"group": {"degree": 3,\n "generators": [}')
    with pytest.raises(ParseError, match=r"bad\.json:2"):
        load_corpus(tmp_path)


def test_schema_violation_names_file(tmp_path):
    (tmp_path / "x.json").write_text(json.dumps({"group": {"degree": "three", "generators": []}}))
    with pytest.raises(ParseError, match=r"x\.json: group/degree"):
        load_corpus(tmp_path)


def test_missing_corpus_dir(tmp_path):
    with pytest.raises(ParseError):
        load_corpus(tmp_path / "nope")


def test_select_suites():
    assert select_suites(None) == list(harness.SUITES)
    assert select_suites(["theorem-*"]) == ["theorem-a", "theorem-b"]
    assert select_suites(["nothing*"]) == []
    with pytest.raises(ArgumentError):
        select_suites(["theorem-c"])


def test_filter_matching_nothing_gives_zeros():
    rep = run_suite(load_corpus(default_corpus()), ["zzz*"])
    assert rep.entries == [] and set(rep.summary.values()) == {0} and rep.ok


def test_theorem_b_suite_passes_on_small_entries():
    entries = [e for e in load_corpus(default_corpus()) if e.group_spec["name"] in ("S3", "S4", "D8")]
    rep = run_suite(entries, ["theorem-b"])
    assert rep.summary["fail"] == 0 and rep.summary["pass"] > 0


def test_a5_theorem_a_case_2_unmet():
    entry = [e for e in load_corpus(default_corpus()) if e.group_spec["name"] == "A5"][0]
    rows, _ = run_entry(entry, ["theorem-a"])
    hits = [r for r in rows if r["context"].get("case") == 2 and r["context"].get("pi") == [2]]
    assert hits and all(r["status"] == "hypotheses_unmet" for r in hits)


def test_report_validates_and_is_stable():
    entries = [e for e in load_corpus(default_corpus()) if e.group_spec["name"] == "S3"]
    a = json.loads(emit_report(run_suite(entries, ["lattice-invariants", "degenerations"])))
    b = json.loads(emit_report(run_suite(entries, ["lattice-invariants", "degenerations"])))
    jsonschema.validate(a, json.loads((default_corpus().parent / "report.schema.json").read_text()))
    assert strip_timing(a) == strip_timing(b)
    assert a["summary"]["pass"] == len(a["entries"])


def test_parallel_matches_serial():
    entries = [e for e in load_corpus(default_corpus()) if e.group_spec["name"] in ("S3", "C6", "D8")]
    one = run_suite(entries, ["degenerations", "fitting-axioms"], jobs=1).to_json()
    two = run_suite(entries, ["degenerations", "fitting-axioms"], jobs=2).to_json()
    assert strip_timing(one) == strip_timing(two)


def test_unknown_format():
    with pytest.raises(ArgumentError):
        emit_report(Report([], "", [], {}), "yaml")


def test_bad_group_becomes_skipped_row(tmp_path):
    (tmp_path / "g.json").write_text(json.dumps({"group": {"degree": 3, "generators": [[[1, 1]]]}}))
    rep = run_suite(load_corpus(tmp_path), ["degenerations"])
    assert rep.summary["skipped"] == 1


# ---------------------------------------------------------------------------
# command line


def test_cli_verify_pass(capsys, tmp_path):
    (tmp_path / "s3.json").write_text(json.dumps({"group": S3_SPEC}))
    code, out, _ = run_cli(capsys, "verify", "--corpus", str(tmp_path), "--suite", "degenerations")
    assert code == 0
    assert json.loads(out)["summary"]["fail"] == 0


def test_cli_verify_fail_prints_witness(capsys, tmp_path, monkeypatch):
    (tmp_path / "s3.json").write_text(json.dumps({"group": S3_SPEC}))

    def broken(env):
        rep = TheoremReport("broken", context={"group": env.group.name})
        rep.check("always false", False, {"why": "planted"})
        yield rep

    monkeypatch.setitem(harness.RUNNERS, "degenerations", broken)
    code, out, _ = run_cli(capsys, "verify", "--corpus", str(tmp_path), "--suite", "degenerations",
                           "--format", "text")
    assert code == 1
    assert "FAIL s3.json degenerations broken" in out and "planted" in out


def test_cli_verify_report_file(capsys, tmp_path):
    (tmp_path / "s3.json").write_text(json.dumps({"group": S3_SPEC}))
    dest = tmp_path / "out"
    dest.mkdir()
    path = dest / "report.json"
    code, out, _ = run_cli(capsys, "verify", "--corpus", str(tmp_path), "--suite", "lattice-*",
                           "--report", str(path))
    assert code == 0 and out.startswith("fitset ")
    assert json.loads(path.read_text())["suites"] == ["lattice-invariants"]


def test_cli_lattice(capsys, files):
    code, out, _ = run_cli(capsys, "lattice", files["group"])
    assert code == 0
    doc = json.loads(out)
    assert len(doc["subgroups"]) == 30


def test_cli_radical(capsys, files):
    code, out, _ = run_cli(capsys, "radical", files["group"], "--set", files["nil"])
    assert code == 0
    doc = json.loads(out)
    assert doc["radical"]["order"] == 4 and doc["members"] == 24 and doc["sigma"] == [2, 3]


def test_cli_injectors(capsys, files):
    code, out, _ = run_cli(capsys, "injectors", files["group"], "--set", files["nil"])
    assert code == 0
    doc = json.loads(out)
    assert [v["order"] for v in doc["injectors"]] == [8, 8, 8]
    code, out, _ = run_cli(capsys, "injectors", files["group"], "--set", files["sol2"],
                           "--method", "theorem-b", "--pi", "2")
    assert code == 0
    doc = json.loads(out)
    assert [v["order"] for v in doc["injectors"]] == [12] and doc["method"] == "theorem_b"
    code, out, _ = run_cli(capsys, "injectors", files["group"], "--set", files["trivial"],
                           "--method", "theorem-b", "--pi", "2")
    assert code == 1 and json.loads(out)["status"] == "hypotheses_unmet"


@pytest.mark.parametrize("argv", [
    ["lattice", "/nonexistent.json"],
    ["verify", "--suite", "theorem-z"],
    ["frobnicate"],
    ["injectors", "G", "--set", "S", "--method", "magic"],
])
def test_cli_usage_errors(capsys, argv):
    assert cli.main(argv) == 2


def test_cli_bad_pi(capsys, files):
    code, _, err = run_cli(capsys, "injectors", files["group"], "--set", files["sol2"],
                           "--method", "theorem-b", "--pi", "two")
    assert code == 2 and "--pi" in err


def test_cli_malformed_group(capsys, tmp_path):
    bad = tmp_path / "g.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "lattice", str(bad))
    assert code == 2 and "g.json:1" in err
