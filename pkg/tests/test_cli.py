import json

import pytest

from bananagon.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gonality_examples(capsys):
    code, out, _ = run(capsys, "gonality", "path:3,2,3")
    assert code == 0 and "gonality\t4" in out
    code, out, _ = run(capsys, "gonality", "star:4^1,3^3,2^3,1^2", "--oracle-check", "--witness")
    assert code == 0 and "gonality\t4" in out and "oracle\t4" in out and "witness\td:" in out
    code, out, _ = run(capsys, "gonality", "path:")
    assert code == 0 and "gonality\t1" in out


def test_gonality_json_fields(capsys):
    code, out, _ = run(capsys, "--format", "json", "gonality", "path:3,2,3", "--witness")
    rec = json.loads(out)
    assert code == 0
    assert set(rec) == {"graph", "gonality", "sn_scw", "genus", "bn_bound", "witness", "stats"}
    assert (rec["gonality"], rec["genus"], rec["bn_bound"]) == (4, 5, 4)
    assert sum(rec["witness"]) == 4 and rec["stats"]["method"] == "dp"
    # --format after the subcommand works too
    code, out2, _ = run(capsys, "gonality", "path:3,2,3", "--witness", "--format", "json")
    assert out2 == out


def test_gonality_file(capsys, mixed_tree_path):
    code, out, _ = run(capsys, "gonality", str(mixed_tree_path), "--oracle-check")
    assert code == 0 and "method\toracle" in out


def test_invariants(capsys, mixed_tree_path):
    code, out, _ = run(capsys, "invariants", "path:100,1,100", "--witness")
    assert code == 0 and "sn_scw\t2" in out and "witness.tcd_bags" in out
    code, out, _ = run(capsys, "--format", "json", "invariants", str(mixed_tree_path))
    rec = json.loads(out)
    assert (rec["genus"], rec["lcm_bound"]) == (14, 12)
    code, out, _ = run(capsys, "--format", "json", "invariants", "path:")
    rec = json.loads(out)
    assert (rec["gonality"], rec["sn_scw"], rec["genus"]) == (1, 1, 0)


def test_table1(capsys):
    code, out, _ = run(capsys, "table1", "--max-vertices", "4")
    assert code == 0
    assert out.splitlines() == ["vertices\t2\t3\t4", "2\t2\t0\t0", "3\t1\t5\t0", "4\t1\t6\t33"]
    code, out, _ = run(capsys, "--format", "json", "table1", "--max-vertices", "3", "--jobs", "2")
    assert json.loads(out)[1] == {"vertices": 3, "counts": {"2": 1, "3": 5}}


def test_conjecture(capsys):
    code, out, _ = run(capsys, "conjecture", "--max-vertices", "3", "--max-bunch", "3")
    assert code == 0 and "counterexamples 0" in out
    code, _, err = run(capsys, "conjecture", "--max-vertices", "6")
    assert code == 2 and "--unsafe-large" in err


def test_construct_gap(capsys):
    code, out, _ = run(capsys, "--format", "json", "construct-gap", "--r", "1", "--verify")
    rec = json.loads(out)
    assert code == 0 and (rec["gon_before"], rec["gon_after"]) == (3, 4)
    code, out, _ = run(capsys, "construct-gap", "--r", "2")
    assert code == 0 and "n\t7057" in out and "bunch_index\t3528" in out
    code, _, _ = run(capsys, "construct-gap", "--r", "0")
    assert code == 2


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--level", "quick")
    assert code == 0 and "FAIL" not in out


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "gonality", "path:x")[0] == 2
    assert run(capsys, "gonality", str(tmp_path / "nope.bt1"))[0] == 2
    assert run(capsys, "table1", "--max-vertices", "1")[0] == 2
    big = "star:" + "2^9"
    assert run(capsys, "gonality", big)[0] == 0  # star formula, no oracle needed
    assert run(capsys, "gonality", big, "--oracle-check")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_failure_exit_code(capsys, monkeypatch):
    import bananagon.cli as cli

    monkeypatch.setitem(cli.TABLE1, 3, [2, 4])
    code, _, err = run(capsys, "table1", "--max-vertices", "3")
    assert code == 1 and "differs" in err


def test_output_is_deterministic(capsys):
    argv = ["--format", "json", "invariants", "path:5,4,2,3,3,2", "--witness"]
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first
    argv = ["selftest", "--seed", "3"]
    assert run(capsys, *argv) == run(capsys, *argv)
