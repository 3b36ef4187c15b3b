import json

import pytest

from seymour.cli import main
from seymour.reporting import InstanceRecord, Report, emit_report


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_gen_emits_instance(capsys):
    code, out = run(["gen", "fixture", "name=C3"], capsys)
    assert code == 0
    assert out == "3 3\n0 1\n1 2\n2 0\n"


def test_oracle_on_fixture(capsys):
    code, out = run(["oracle", "C4X", "--format", "machine"], capsys)
    assert code == 0
    payload = json.loads(out)
    (rec,) = payload["records"]
    assert rec["detail"]["snp-set"] == [0, 1, 2, 3]
    assert payload["summary"]["verified"] == 1


def test_oracle_on_file(tmp_path, capsys):
    path = tmp_path / "inst.txt"
    path.write_text("3 3\n0 1\n0 2\n1 2\n")
    code, out = run(["oracle", str(path)], capsys)
    assert code == 0 and "snp-set: [2]" in out


def test_median_reports_feedback(capsys):
    code, out = run(["median", "TT3", "--format", "machine"], capsys)
    assert code == 0
    (rec,) = json.loads(out)["records"]
    assert rec["detail"]["order"] == [0, 1, 2]
    assert rec["detail"]["value"] == "3"
    assert rec["detail"]["feedback"] is True


def test_sediment_c3_periodic(capsys):
    code, out = run(
        ["sediment", "C3", "--order", "0,1,2", "--format", "machine"], capsys
    )
    assert code == 0
    (rec,) = json.loads(out)["records"]
    assert rec["detail"]["outcome"] == "periodic"
    assert rec["detail"]["cycle-length"] == 3


def test_delta_lc3(capsys):
    code, out = run(["delta", "LC3", "--format", "machine"], capsys)
    assert code == 0
    detail = json.loads(out)["records"][0]["detail"]
    assert detail["missing-edges"] == [[0, 1], [2, 3], [4, 5]]
    assert detail["good-digraph"] is True and detail["good-edges"] == []


def test_verify_single_star_st1(capsys):
    code, out = run(["verify", "single-star", "ST1", "--format", "machine"], capsys)
    assert code == 0
    (rec,) = json.loads(out)["records"]
    assert rec["status"] == "verified" and rec["detail"]["witnesses"]


def test_verify_gate_exits_zero(capsys):
    code, out = run(["verify", "kings-stars", "C4X", "--format", "machine"], capsys)
    assert code == 0
    (rec,) = json.loads(out)["records"]
    assert rec["status"] == "hypothesis-failed"


def test_parse_error_exits_two(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("3 2\n0 1\n1 0\n")
    assert main(["oracle", str(path)]) == 2


def test_unknown_spec_exits_two(capsys):
    assert main(["oracle", "mystery n=3"]) == 2


def test_sweep_filtered_family(capsys):
    code, out = run(
        ["sweep", "two-stars", "--budget", "40", "--max-n", "8",
         "--format", "machine"],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["instances"] > 0
    assert payload["summary"]["failed"] == 0


def test_sweep_exhaustive_small(capsys):
    code, out = run(["sweep", "tournaments-n4", "--format", "machine"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["config"]["evaluated"] == 64
    assert payload["config"]["violations"] == 0


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, _ = run(
        ["oracle", "C3", "--format", "machine", "--out", str(target)], capsys
    )
    assert code == 0
    assert json.loads(target.read_text())["command"] == "oracle"


def test_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SNCWB_FORMAT", "machine")
    code, out = run(["oracle", "C3"], capsys)
    assert code == 0
    assert json.loads(out)["command"] == "oracle"


def test_reporting_empty_run_and_exit_codes():
    rep = Report("oracle", {})
    assert rep.summary() == {
        "instances": 0, "verified": 0, "hypothesis-failed": 0,
        "failed": 0, "findings": 0,
    }
    assert rep.exit_code == 0
    assert "summary" in emit_report(rep, "human")
    rep.add(InstanceRecord("ff", "x", "hypothesis-failed"))
    assert rep.exit_code == 0
    rep.add(InstanceRecord("aa", "y", "failed"))
    assert rep.exit_code == 1
    assert [r.fingerprint for r in rep.sorted_records()] == ["aa", "ff"]
    with pytest.raises(ValueError):
        emit_report(rep, "xml")
