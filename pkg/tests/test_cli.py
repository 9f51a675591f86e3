import json

import pytest

from polystab.cli import main


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err

    return _run


def test_verify_running_example(run, fixture_path):
    code, out, _ = run("verify", fixture_path / "running_example.json", "--x", "0")
    report = json.loads(out)
    assert code == 0
    assert report["all_passed"] and all(report["verdicts"].values())
    assert report["sub_mu"]["vertices"] == [["-1"], ["1"]]


def test_verify_default_parameter(run, fixture_path):
    code, out, _ = run("verify", fixture_path / "indicator_example.json")
    assert code == 0
    assert json.loads(out)["B"]["rays"] == [["1"]]


def test_eval_negative_parameter(run, fixture_path):
    code, out, _ = run("eval", fixture_path / "running_example.json", "--x", "-3")
    assert (code, out.strip()) == (0, "3")


def test_eval_infeasible(run, fixture_path):
    code, out, _ = run("eval", fixture_path / "indicator_example.json", "--x", "1/2")
    assert (code, out.strip()) == (0, "+inf")


def test_verify_bad_minimizer(run, fixture_path):
    code, _, err = run("verify", fixture_path / "running_example.json", "--x", "5", "--y", "0")
    assert code == 2
    assert "precondition" in err


def test_verify_outside_domain(run, fixture_path):
    code, _, err = run("verify", fixture_path / "indicator_example.json", "--x", "1")
    assert code == 2 and "hypothesis-violation" in err


def test_subdiff(run, fixture_path):
    code, out, _ = run("subdiff", fixture_path / "running_example.json", "--x", "0", "--h-form")
    data = json.loads(out)
    assert code == 0
    assert data["sub_mu"]["vertices"] == [["-1"], ["1"]]
    assert data["sing_mu"]["vertices"] == [["0"]]
    assert "h_form" in data["sub_mu"]


def test_convert_both_ways(run, fixture_path, tmp_path):
    code, out, _ = run("convert", fixture_path / "square.json", "--to", "v")
    v = json.loads(out)
    assert code == 0 and len(v["vertices"]) == 4
    path = tmp_path / "square_v.json"
    path.write_text(out)
    code, out, _ = run("convert", path, "--to", "h")
    assert code == 0 and len(json.loads(out)["ineq"]) == 4


def test_batch(run):
    code, out, _ = run("batch", "--count", "5", "--seed", "2", "--dims", "1,2", "--no-timing")
    assert code == 0
    assert json.loads(out) == {"count": 5, "failures": []}


def test_batch_bad_dims(run):
    code, _, err = run("batch", "--count", "1", "--dims", "1")
    assert code == 2 and "schema" in err


def test_missing_file(run, tmp_path):
    code, _, err = run("eval", tmp_path / "nope.json", "--x", "0")
    assert code == 2 and "schema" in err


def test_malformed_vector(run, fixture_path):
    code, _, err = run("eval", fixture_path / "running_example.json", "--x", "1/0")
    assert code == 2


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_batch_dims_out_of_range(run):
    code, _, err = run("batch", "--count", "2", "--dims", "4,1")
    assert code == 2 and "schema" in err
