import json

import pytest

from hyperpack.cli import main
from hyperpack.documents import Instance, dump_instance
from hyperpack.hypercore import MixedHypergraph, Weights
from hyperpack.matroid import FreeMatroid

from helpers import E2


@pytest.fixture
def e2_file(tmp_path):
    path = tmp_path / "e2.json"
    path.write_text(dump_instance(Instance(E2, FreeMatroid(("r1", "r2")), Weights({"a": 1, "b": 1, "c": 1}))))
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_reachability(capsys, e2_file):
    code, out, _ = run(capsys, "solve", e2_file, "--mode", "kkt")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "optimal" and doc["weight"] == 3


def test_solve_spanning_infeasible_with_certificate(capsys, e2_file):
    code, out, _ = run(capsys, "solve", e2_file, "--mode", "spanning", "--certificate")
    doc = json.loads(out)
    assert code == 2 and doc["status"] == "infeasible"
    assert doc["certificate"]["set"] == ["u"]


def test_empty_instance(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text(dump_instance(Instance(MixedHypergraph(set(), {"r"}), FreeMatroid(("r",)))))
    code, out, _ = run(capsys, "solve", path)
    assert code == 0 and json.loads(out)["weight"] == 0


def test_validate_and_tamper(capsys, e2_file, tmp_path):
    _, out, _ = run(capsys, "solve", e2_file, "--mode", "reachability")
    good = tmp_path / "good.json"
    good.write_text(out)
    code, out, _ = run(capsys, "validate", e2_file, good)
    assert code == 0 and json.loads(out)["valid"]

    doc = json.loads(good.read_text())
    moved = doc["arborescences"][0]["elements"].pop()
    doc["arborescences"][1]["elements"].append(moved)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", e2_file, bad)
    assert code == 1 and not json.loads(out)["valid"]


def test_check(capsys, e2_file):
    assert run(capsys, "check", e2_file, "--mode", "reachability")[0] == 0
    code, out, _ = run(capsys, "check", e2_file, "--mode", "spanning")
    assert code == 2 and json.loads(out)["violation"]["condition"] == "spanning-cut"
    code, _, err = run(capsys, "check", e2_file, "--mode", "spanning", "--cap", "2")
    assert code == 1 and "cap" in err


def test_gen_is_reproducible(capsys):
    args = ["gen", "--seed", "1", "--vertices", "3", "--hyperedges", "1", "--weights=-2:2", "--matroid", "uniform:1"]
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_gen_then_solve_then_validate(capsys, tmp_path):
    for seed in range(15):
        inst = tmp_path / f"i{seed}.json"
        inst.write_text(run(capsys, "gen", "--seed", seed, "--vertices", "3", "--roots", "2", "--dyperedges", "5",
                            "--hyperedges", "1", "--matroid", "random")[1])
        code, out, _ = run(capsys, "solve", inst)
        assert code in (0, 2)
        if code == 0:
            sol = tmp_path / f"s{seed}.json"
            sol.write_text(out)
            assert run(capsys, "validate", inst, sol)[0] == 0


@pytest.mark.parametrize("argv", [["solve", "missing.json"], ["gen", "--vertices", "1", "--hyperedges", "2"]])
def test_errors_exit_one(capsys, argv):
    assert main(argv) == 1


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 1


def test_unrooted_instance(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"vertices": ["u"], "roots": ["r"], "dyperedges": [{"id": "a", "tail": ["u"], "head": "r"}]}))
    code, _, err = run(capsys, "solve", path)
    assert code == 1 and "rootedness" in err

