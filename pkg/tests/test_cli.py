import json
import shutil

import pytest

from infratop.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_classify(capsys, data_dir):
    code, out, _ = run(capsys, "classify", data_dir / "ex2.json", "--set", "a,b", "--json")
    report = json.loads(out)
    assert code == 0 and report["i_closure"] == ["a", "b", "d"] and report["c_genuine"] is True
    code, out, _ = run(capsys, "classify", data_dir / "ex2.json", "--set", "d", "--json")
    assert json.loads(out)["c_genuine"] is False
    code, out, _ = run(capsys, "classify", data_dir / "ex2.json", "--set", "")
    assert code == 0 and "i_interior           {}" in out


def test_exit_codes(capsys, data_dir, tmp_path):
    code, _, err = run(capsys, "classify", data_dir / "ex2.json", "--set", "z")
    assert code == 2 and "'z'" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"universe": ["a", "b"], "family": [["a"], ["a", "b"]]}')
    code, _, err = run(capsys, "classify", bad, "--set", "a")
    assert code == 1 and "contains-empty" in err
    code, _, err = run(capsys, "eval", data_dir / "m1.json", "p -> -> q")
    assert code == 3 and "offset 5" in err
    code, _, _ = run(capsys, "countermodel", "p", "--max-worlds", "3", "--policy", "full")
    assert code == 4


def test_family(capsys, data_dir):
    code, out, _ = run(capsys, "family", data_dir / "ex4.json", "--kind", "closed", "--json")
    assert code == 0 and len(json.loads(out)) == 7
    _, out, _ = run(capsys, "family", data_dir / "ex1.json", "--kind", "ps-open")
    assert out.split() == ["{}", "{a}", "{b}", "{a,b}", "{a,b,c}"]
    _, out, _ = run(capsys, "family", data_dir / "indiscrete.json", "--kind", "minimal", "--json")
    assert len(json.loads(out)) == 1


def test_interior_closure(capsys, data_dir):
    assert run(capsys, "interior", data_dir / "ex2.json", "--set", "a,b,d")[1].strip() == "{a,b}"
    assert run(capsys, "closure", data_dir / "ex2.json", "--set", "d")[1].strip() == "{d}"


def test_meet_union_generate(capsys, data_dir, tmp_path):
    out_file = tmp_path / "meet.json"
    code, out, _ = run(capsys, "meet", data_dir / "ex2.json", data_dir / "ex3.json", "-o", out_file)
    assert code == 0 and json.loads(out_file.read_text())["family"] == [[], ["c"], ["a", "b", "c", "d"]]
    code, out, _ = run(capsys, "union-check", data_dir / "ex2.json", data_dir / "ex3.json", "--json")
    assert code == 1 and json.loads(out)["intersection"] == ["b"]
    code, out, _ = run(capsys, "generate", "--universe", "a,b,c,d", "--seed", "a,b", "--seed", "b,c")
    assert code == 0 and json.loads(out)["family"] == [[], ["b"], ["a", "b"], ["b", "c"], ["a", "b", "c", "d"]]


def test_eval_and_truth_set(capsys, data_dir):
    code, out, _ = run(capsys, "eval", data_dir / "m1.json", "[]p -> [[]]p", "--json")
    assert code == 0 and json.loads(out)["true_in_model"] is True
    code, out, _ = run(capsys, "eval", data_dir / "m1.json", "[]true", "--world", "w3", "--json")
    trace = json.loads(out)
    assert trace["result"] is False and "no open set" in trace["note"]
    code, out, _ = run(capsys, "eval", data_dir / "m1.json", "p | !p")
    assert "true in model: yes" in out
    code, _, _ = run(capsys, "eval", data_dir / "m1.json", "p", "--world", "w7")
    assert code == 2
    code, _, _ = run(capsys, "eval", data_dir / "m1.json", "zz", "--strict")
    assert code == 2
    assert run(capsys, "truth-set", data_dir / "m1.json", "[]p")[1].strip() == "{w1,w2}"


def test_countermodel_and_proofs(capsys, data_dir):
    code, out, _ = run(capsys, "countermodel", "[]true", "--json")
    data = json.loads(out)
    assert code == 0 and data["found"] and data["model"]["worlds"] == ["w1"]
    code, out, _ = run(capsys, "countermodel", "[]p -> p", "--max-worlds", "2")
    assert code == 0 and "no countermodel" in out
    assert run(capsys, "check-proof", data_dir / "mon_box.json")[0] == 0
    code, out, _ = run(capsys, "check-proof", data_dir / "nec.json")
    assert code == 1 and "necessitation" in out


def test_oracle_commands(capsys):
    assert run(capsys, "oracle", "count", "--n", "3")[1].strip() == "45"
    code, out, _ = run(capsys, "oracle", "witness", "non-i-genuine-intersection-may-be-i-genuine", "--json")
    data = json.loads(out)
    assert code == 0 and data["discrepancy"] and data["holds"]
    assert run(capsys, "oracle", "witness", "bogus")[0] == 1


def test_paper_suite(capsys):
    code, out, _ = run(capsys, "paper-suite")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "paper-suite", "--filter", "closure", "--json")
    groups = {o["group"] for o in json.loads(out)}
    assert code == 0 and groups == {"closure"}


def test_paper_suite_negative_control(capsys, data_dir, tmp_path):
    corrupt = tmp_path / "data"
    shutil.copytree(data_dir, corrupt)
    (corrupt / "ex2.json").write_text(
        '{"universe": ["a", "b", "c", "d"], "family": [[], ["a"], ["b"], ["a", "b"], ["a", "b", "c", "d"]]}'
    )
    code, out, err = run(capsys, "paper-suite", "--data-dir", corrupt, "--filter", "interior")
    assert code == 1 and "first failing check: ex2" in err
