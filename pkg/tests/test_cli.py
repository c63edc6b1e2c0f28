import json
import subprocess
import sys
from importlib.resources import files

import pytest

from operadix.cli import main

DATA = files("operadix") / "data"
DUAL = str(DATA / "dual_numbers.json")
CORRUPT = str(DATA / "corrupted_module.json")
REGULAR = str(DATA / "dual_numbers_regular_module.json")


def run(tmp_path, *argv):
    out = tmp_path / "out.json"
    status = main(list(argv) + ["--out", str(out)])
    return status, (out.read_text() if out.exists() else None)


def test_env_algebra_of_dual_numbers_over_uass(tmp_path):
    status, text = run(tmp_path, "env-algebra", "--operad", "uAss", "--algebra", DUAL, "-K", "4")
    data = json.loads(text)
    assert status == 0
    assert data["monoid"]["dim"] == 4
    assert data["envelope"]["stabilized"] is True


def test_corrupted_module_gives_associativity_witness(tmp_path):
    status, text = run(tmp_path, "check-module", "--module", CORRUPT)
    data = json.loads(text)
    assert status == 1
    (v,) = data["violations"]
    assert v["axiom"].startswith("(2)") and v["witness"]


def test_clean_module_passes(tmp_path):
    assert run(tmp_path, "check-module", "--module", REGULAR)[0] == 0


def test_trees_enumerate(tmp_path):
    status, text = run(tmp_path, "trees", "enumerate", "-n", "2", "-k", "2")
    assert status == 0
    assert json.loads(text)["trees"] == ["C1(C2(.,.))", "C2(.,C1(.))", "C2(.,U1(.))",
                                         "C3(.,.,C0)", "U1(C2(.,.))"]


def test_trees_csv(tmp_path):
    status, text = run(tmp_path, "trees", "enumerate", "-n", "3", "-k", "3", "--csv")
    assert status == 0 and "3,3,27" in text.splitlines()


def test_trees_usets(tmp_path):
    labels = tmp_path / "labels.json"
    labels.write_text(json.dumps({"K1": {"1": ["id", "a"], "2": ["p"]},
                                  "K2": {"1": ["id", "a", "b"], "2": ["p", "q"]}}))
    status, text = run(tmp_path, "trees", "usets", "--tree", "C2(U1(.),.)", "--labels", str(labels))
    data = json.loads(text)
    assert status == 0
    assert data["u_star"] == ["p(.,a(.))", "p(.,id(.))", "q(.,id(.))"]


def test_require_stable(tmp_path):
    # the free algebra's envelope grows with the cap, so it never stabilizes
    free = tmp_path / "free.json"
    free.write_text(json.dumps({"generators": {"cat": "vectq", "basis": ["x"]}, "weight_cap": 2,
                                "relations": []}))
    args = ["env-algebra", "--algebra", str(free), "-K", "2"]
    status, text = run(tmp_path, *args)
    assert status == 0 and json.loads(text)["envelope"]["stabilized"] is False
    assert run(tmp_path, *args, "--require-stable")[0] == 2


def test_undetermined_composite_exits_2(tmp_path):
    assert run(tmp_path, "env-algebra", "--algebra", DUAL, "-K", "1")[0] == 2


@pytest.mark.parametrize("argv", [
    ["env-algebra", "--algebra", "/nonexistent/a.json"],
    ["env-algebra", "--algebra", DUAL, "-K", "-1"],
    ["trees", "usets", "--tree", "C2(.", "--labels", DUAL],
    ["no-such-command"],
])
def test_input_errors_exit_3(tmp_path, argv, capsys):
    assert main(argv) == 3


@pytest.mark.parametrize("argv", [
    ["check-algebra", "--algebra", DUAL],
    ["free-algebra", "--generators", "2", "--weight-cap", "2"],
    ["free-module", "--algebra", DUAL, "--m0-dim", "2"],
    ["module-roundtrip", "--module", REGULAR],
    ["semidirect", "--module", REGULAR],
    ["hopf-env", "--operad", "uCom"],
    ["env-operad", "--algebra", DUAL, "-K", "3", "--max-arity", "2"],
])
def test_commands_succeed(tmp_path, argv):
    status, text = run(tmp_path, *argv)
    assert status == 0 and json.loads(text)["exit_status"] == 0


def test_semidirect_of_corrupted_module_fails(tmp_path):
    assert run(tmp_path, "semidirect", "--module", CORRUPT)[0] == 1


def test_base_change(tmp_path):
    ground = tmp_path / "q.json"
    ground.write_text(json.dumps({"generators": {"cat": "vectq", "basis": []}, "weight_cap": 1,
                                  "relations": []}))
    fmap = tmp_path / "f.json"
    fmap.write_text(json.dumps({"cat": "vectq", "dom": ["1"], "cod": ["1", "x"],
                                "matrix": [["1"], ["0"]]}))
    status, text = run(tmp_path, "base-change", "--source", str(ground), "--target", DUAL,
                       "--map", str(fmap))
    data = json.loads(text)
    assert status == 0
    assert data["env_map"]["target_dim"] == 4
    assert data["unit_on_free_module"]["ok"]


def test_outputs_are_byte_identical(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for out in (a, b):
        main(["env-operad", "--algebra", DUAL, "-K", "3", "--max-arity", "2", "--out", str(out)])
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "operadix", "trees", "enumerate", "-n", "1", "-k", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 2
