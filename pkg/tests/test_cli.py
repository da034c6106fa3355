import json

import pytest

from uqtwist.cli import EXIT_CONFIG, EXIT_OK, EXIT_USAGE, run_command


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rootdata(capsys):
    code, out, _ = run(capsys, "rootdata", "A2", "5")
    assert code == EXIT_OK
    assert "admissible\tyes" in out
    assert sorted(l.split("\t")[1] for l in out.splitlines() if l.startswith("root\t")) == ["0,1", "1,0", "1,1"]


def test_rootdata_non_admissible(capsys):
    code, out, _ = run(capsys, "rootdata", "B2", "5")
    assert code == 1 and "admissible\tno" in out


def test_alt(capsys):
    code, out, _ = run(capsys, "alt", "A2", "5")
    assert code == EXIT_OK and out.splitlines()[-1] == "count\t5"


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "rootdata", "A2")[0] == EXIT_USAGE
    assert run(capsys, "rootdata", "A2", "5", "--nope")[0] == EXIT_USAGE
    assert run(capsys, "twist", "reduce", "A1", "5")[0] == EXIT_USAGE


def test_config_errors(capsys):
    assert run(capsys, "cohomology", "A2", "5", "--form", "[[0,1],[1,0]]")[0] == EXIT_CONFIG
    assert run(capsys, "cohomology", "A2", "5", "--form", "not json")[0] == EXIT_CONFIG
    assert run(capsys, "dual", "check", "A2", "3")[0] == EXIT_CONFIG
    assert run(capsys, "rootdata", "Q7", "5")[0] == EXIT_CONFIG


def test_cohomology_table(capsys):
    code, out, _ = run(capsys, "cohomology", "A1", "5")
    assert code == EXIT_OK
    rows = [l.split("\t") for l in out.splitlines()[1:]]
    assert [r for r in rows if r[4] != "0"] == [["5", "0", "4", "0", "1"]]
    assert all(r[3] == "0" for r in rows)


def test_twist_round_trip_through_files(capsys, tmp_path):
    code, out, _ = run(capsys, "twist", "random", "A1", "5", "--seed", "4")
    assert code == EXIT_OK
    path = tmp_path / "j.json"
    path.write_text(out)
    code, out, _ = run(capsys, "twist", "roundtrip", "A1", "5", "--file", str(path))
    assert code == EXIT_OK and out.strip() == "replay\tpass"
    code, out, _ = run(capsys, "twist", "reduce", "A1", "5", "--file", str(path), "--approx")
    nf = json.loads(out)
    assert nf["replay_ok"] and nf["alt_form"] == [[0]]
    assert "c_approx_nonauthoritative" in nf


def test_dpgauge(capsys):
    code, out, _ = run(capsys, "twist", "dpgauge", "A1", "5", "--root", "1", "--lam", "2")
    data = json.loads(out)
    assert code == EXIT_OK and len(data["word"]) == 1 and len(data["twist"]) == 5


def test_reports_are_deterministic(capsys):
    a = run(capsys, "twist", "random", "A1", "5", "--seed", "9")[1]
    b = run(capsys, "twist", "random", "A1", "5", "--seed", "9")[1]
    assert a == b


@pytest.mark.parametrize("argv", [["dual", "check", "A2", "5", "--form", "[[0,1],[4,0]]"]])
def test_dual_check(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert out.count("relation\t") == 5


def test_acceptance_subset(capsys):
    code, out, _ = run(capsys, "acceptance", "--suite", "quick", "--only", "8", "4")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert [l.split("\t")[:2] for l in lines] == [["4_group_twists", "pass"], ["8_kappa", "pass"]]
