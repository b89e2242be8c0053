import json

import pytest

from probagg.cli import main
from probagg.reproduce import data_path

PROFILE = str(data_path("profile.json"))
AGENDA = str(data_path("agenda.json"))
SESSION = str(data_path("session.json"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_reproduce_golden(capsys):
    code, out, err = run(capsys, "reproduce-paper")
    assert code == 0
    doc = records(out)[0]
    assert doc["ok"] and not doc["mismatches"]
    assert doc["tables"]["table2"][0]["values"] == [
        "0.7000", "0.5667", "0.4000", "0.7667", "0.4667", "0.3000", "0.2333", "0.1667"]
    f_star = [r for r in doc["tables"]["table4"] if r["row"] == "F"][0]
    assert f_star["exact"] == ["1", "3/4", "0", "3/4", "3/4", "0", "0", "0"]
    assert "linear pool, equal weights" in err


def test_reproduce_deterministic(capsys):
    first = run(capsys, "reproduce-paper")[1]
    assert run(capsys, "reproduce-paper")[1] == first


def test_check_agenda(capsys):
    code, out, _ = run(capsys, "check-agenda", AGENDA)
    doc = records(out)[0]
    assert code == 0
    assert doc["non_nested"] and doc["contingent_count"] == 16
    assert doc["theorem1_preconditions"]["satisfied"]
    assert doc["and_gaps"] == [["c", "a -> b"]]


def test_check_rationality_flags_j2(capsys):
    code, out, _ = run(capsys, "check-rationality", PROFILE)
    assert code == 1
    verdicts = {r["name"]: r["rational"] for r in records(out)[0]["judgments"]}
    assert verdicts == {"J1": True, "J2": False, "J3": True}


def test_aggregate_and_dictator(capsys, tmp_path):
    w = tmp_path / "w.json"
    w.write_text(json.dumps({"weights": ["0", "1", "0"]}))
    code, out, _ = run(capsys, "aggregate", PROFILE, "--weights", str(w))
    doc = records(out)[0]
    assert code == 0 and doc["dictator"] == 2
    assert doc["collective"]["values"]["b"] == "0.5000"


def test_update_gap_zero(capsys):
    code, out, _ = run(capsys, "update", PROFILE, "--learn", "a")
    doc = records(out)[0]
    assert code == 0 and doc["gap"] == "0"
    assert doc["update_then_aggregate"]["values"]["a & b & c"] == "0.2381"


def test_update_off_common_ground_exit_one(capsys):
    code, out, _ = run(capsys, "update", PROFILE, "--learn", "b")
    assert code == 1 and records(out)[0]["gap"] != "0"


def test_session_two_steps(capsys):
    code, out, err = run(capsys, "session", SESSION)
    recs = records(out)
    assert code == 0
    assert [r["gap"] for r in recs] == ["0", "0"]
    assert recs[1]["collective"]["b"] == "0.7500"


def test_session_inadmissible(capsys, tmp_path):
    s = tmp_path / "s.json"
    s.write_text(json.dumps({"profile": PROFILE, "events": [{"learn": "!c"}, {"learn": "c"}]}))
    code, out, err = run(capsys, "session", str(s))
    assert code == 2
    assert len(records(out)) == 1
    assert "InadmissibleEventError" in err


@pytest.mark.parametrize("content,needle", [
    ("{", "invalid JSON"),
    (json.dumps({"judgments": [{"values": {"a": "0.5"}}]}), "agenda"),
    (json.dumps({"agenda": {"atoms": ["a"], "formulas": ["a &"]}, "judgments": [{"values": {"a": "0.5"}}]}),
     "syntax error"),
    (json.dumps({"agenda": {"atoms": ["a"], "formulas": ["a"]}, "judgments": [{"values": {"a": "2"}}]}),
     "outside [0, 1]"),
])
def test_bad_inputs_exit_two(capsys, tmp_path, content, needle):
    f = tmp_path / "bad.json"
    f.write_text(content)
    code, _, err = run(capsys, "aggregate", str(f))
    assert code == 2 and needle in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "aggregate", "/nonexistent.json")
    assert code == 2 and "cannot read" in err


def test_float_mode(capsys):
    code, out, _ = run(capsys, "aggregate", PROFILE, "--mode", "float")
    assert code == 0 and records(out)[0]["collective"]["values"]["b"] == "0.5667"


def test_pretty_and_output(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "update", PROFILE, "--learn", "a", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["gap"] == "0"
    code, out, _ = run(capsys, "update", PROFILE, "--learn", "a", "--pretty")
    assert out.startswith("after learning a")


def test_interval_flag(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"agenda": {"atoms": ["a", "b"], "formulas": ["a", "b"]},
                             "judgments": [{"values": {"a": "0.5", "b": "0.5"}},
                                           {"values": {"a": "0.6", "b": "0.5"}}]}))
    code, _, err = run(capsys, "update", str(f), "--learn", "a")
    assert code == 2 and "AmbiguousUpdateError" in err
    code, out, _ = run(capsys, "update", str(f), "--learn", "a", "--interval")
    doc = records(out)[0]
    assert code == 0 and doc["bounds"]["J1"]["b"] == ["0.0000", "1.0000"]


def test_verify_axioms(capsys):
    code, out, _ = run(capsys, "verify-axioms", PROFILE, "--cases", "10")
    doc = records(out)[0]
    assert code == 0
    assert doc["consensus_compatibility"]["candidates"] == 256
    assert doc["independence"]["pairs"] == 10


def test_property_suite_small(capsys):
    code, out, _ = run(capsys, "property-suite", "--cases", "20", "--seed", "1")
    doc = records(out)[0]
    assert code == 0 and doc["on_domain"]["passed"] == 20
