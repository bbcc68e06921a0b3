import json

import pytest

from incknap.cli import main
from incknap.io import read_instance


@pytest.fixture
def iik_file(tmp_path):
    path = tmp_path / "iik.json"
    path.write_text('{"type":"iik","profits":[1,"3/5"],"weights":[2,1],"capacities":[2,3]}')
    return str(path)


@pytest.fixture
def mink_file(tmp_path):
    path = tmp_path / "mink.json"
    path.write_text('{"type":"mink","costs":[1,"3/5","0.5"],"weights":[3,2,2],"demand":4}')
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_iik(capsys, iik_file):
    code, out, _ = run(capsys, "solve-iik", "--input", iik_file, "--eps", "1/2")
    doc = json.loads(out)
    assert code == 0
    assert doc["profit"]["exact"] == "13/5"
    assert doc["schedule"]["insert_time"] == [1, 2]


def test_solve_to_file(capsys, iik_file, tmp_path):
    out = tmp_path / "rep.json"
    assert main(["solve-ik", "--input", iik_file, "--eps", "0.5", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["guarantee"] == "full"


def test_solve_multi_and_exact(capsys, iik_file):
    assert run(capsys, "solve-multi", "--input", iik_file, "--eps", "1/3")[0] == 0
    code, out, _ = run(capsys, "exact-iik", "--input", iik_file)
    assert code == 0 and json.loads(out)["value"]["exact"] == "13/5"


def test_exact_mink(capsys, mink_file):
    code, out, _ = run(capsys, "exact-mink", "--input", mink_file, "--method", "dp")
    assert code == 0 and json.loads(out)["solution"] == [0, 1, 1]


def test_mink_gap_csv(capsys, mink_file, tmp_path):
    path = tmp_path / "gap.csv"
    code, out, _ = run(capsys, "mink-gap", "--input", mink_file, "--eps", "1/4", "--csv", str(path))
    assert code == 0
    assert json.loads(out)["gap"]["exact"] == "1"
    lines = path.read_text().splitlines()
    assert lines[0].startswith("eps,mode") and len(lines) == 2


def test_mink_size(capsys):
    code, out, _ = run(capsys, "mink-size", "--eps", "1/4")
    doc = json.loads(out)
    assert code == 0 and doc["baseline"] == "78125" and doc["gamma"] == "1901"


def test_gen_roundtrip(capsys, tmp_path):
    path = tmp_path / "g.json"
    assert main(["gen", "--kind", "iik", "--seed", "42", "--n", "4", "--T", "3",
                 "--capacity", "linear", "--out", str(path)]) == 0
    inst = read_instance(path)
    assert inst.n == 4 and inst.T == 3
    code, out, _ = run(capsys, "gen", "--kind", "iik", "--seed", "42", "--n", "4", "--T", "3",
                       "--capacity", "linear")
    assert out == path.read_text()


def test_gen_mink_levels(capsys):
    code, out, _ = run(capsys, "gen", "--kind", "mink", "--seed", "1", "--levels", "3",
                       "--eps", "1/16")
    assert code == 0 and len(set(json.loads(out)["costs"])) <= 3


def test_experiment(capsys, tmp_path):
    path = tmp_path / "e.csv"
    assert main(["experiment", "--suite", "size", "--csv", str(path)]) == 0
    assert len(path.read_text().splitlines()) == 5
    code, out, _ = run(capsys, "experiment", "--list")
    assert code == 0 and "iik-ptas" in out


def test_parse_error_exit_two(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"type":"iik","profits":[1],"weights":[1],"capacities":[2,1]}')
    code, _, err = run(capsys, "solve-iik", "--input", str(bad), "--eps", "1/2")
    assert code == 2 and "nondecreasing" in err


def test_wrong_kind_exit_two(capsys, mink_file):
    assert run(capsys, "solve-iik", "--input", mink_file, "--eps", "1/2")[0] == 2


def test_missing_file_exit_two(capsys, tmp_path):
    assert run(capsys, "exact-iik", "--input", str(tmp_path / "none.json"))[0] == 2


def test_bad_eps_exit_two(capsys, iik_file):
    for eps in ("abc", "2", "0"):
        with pytest.raises(SystemExit) as info:
            main(["solve-iik", "--input", iik_file, "--eps", eps])
        assert info.value.code == 2


def test_unknown_suite_exit_two(capsys):
    assert run(capsys, "experiment", "--suite", "nope")[0] == 2
