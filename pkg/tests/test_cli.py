import json
import subprocess
import sys

import pytest

from mtfr.cli import main
from mtfr.fixtures import FIXTURES
from mtfr.model import load_network


@pytest.fixture
def net(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.json"
        assert main(["fixture", name, "--out", str(path)]) == 0
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fixture_round_trip(net):
    for name, build in FIXTURES.items():
        assert load_network(net(name)) == build()


def test_cascade_trace(capsys, net):
    code, out, _ = run(capsys, "cascade", "--network", net("single-failure"), "--remove", "S4", "--trace")
    assert code == 0
    assert out.splitlines() == ["round 1: {R3}", "round 2: {R2, S1, S3}",
                                "round 3: {R1, S2}", "surviving: {}"]


def test_cascade_json_and_edges(capsys, net):
    code, out, _ = run(capsys, "cascade", "--network", net("six-cycle"), "--edges", "S1>R1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["variant"] == "edge" and doc["total_failure"]
    assert doc["rounds"] == [["R1"], ["S2"], ["R2"], ["S3"], ["R3"], ["S1"]]


def test_cascade_bidirectional_partial(capsys, net):
    _, out, _ = run(capsys, "cascade", "--network", net("six-cycle-bi"), "--remove", "S1")
    assert out.startswith("surviving: {R1, R2, R3, S2, S3}")


def test_cycles(capsys, net):
    code, out, _ = run(capsys, "cycles", "--network", net("six-cycle-bi"), "--list")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "cycles: 8" and len(lines) == 9
    _, out, _ = run(capsys, "cycles", "--network", net("six-cycle-bi"), "--cap", "3")
    assert out.strip() == "cycles: 3 (truncated)"


@pytest.mark.parametrize("method,variant,size", [
    ("exact", "node", 1), ("edge-exact", "node", 1), ("greedy-cycle", "node", 1),
    ("greedy-degree", "node", 1), ("brute", "edge", 1),
])
def test_solve_methods(capsys, net, method, variant, size):
    code, out, _ = run(capsys, "solve", "--network", net("six-cycle"), "--method", method,
                       "--variant", variant, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["size"] == size and doc["verified_total_failure"]


def test_solve_text_and_bidirectional(capsys, net):
    code, out, _ = run(capsys, "solve", "--network", net("six-cycle-bi"), "--method", "vertex-cover")
    assert code == 0 and "size: 3" in out and "optimal: true" in out


def test_error_exit_code(capsys, net):
    code, _, err = run(capsys, "solve", "--network", net("single-failure"))
    assert code == 2 and "error [NOT_STAR]" in err
    code, _, err = run(capsys, "cascade", "--network", net("six-cycle"), "--remove", "X9")
    assert code == 2 and "INVALID_REMOVAL" in err


def test_gen_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["gen", "--n", "5", "--seed", "42", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["gen", "--n", "3", "--mode", "bi", "--out", str(a)]) == 0
    assert load_network(str(a)).is_bidirectional


def test_validate(tmp_path, capsys, net):
    code, out, _ = run(capsys, "validate", "--network", net("single-failure"))
    assert code == 0 and out.splitlines() == ["valid", "star mode: false"]
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "validate", "--network", str(bad))
    assert code == 2 and "SYNTAX" in err


def test_experiment_writes_outputs(tmp_path, capsys):
    code, out, _ = run(capsys, "experiment", "fig7", "--sizes", "4..5", "--trials", "5",
                       "--seed", "3", "--out-dir", str(tmp_path))
    assert code == 0
    assert (tmp_path / "fig7.csv").exists() and (tmp_path / "fig7.svg").exists()
    assert out.splitlines()[0].startswith("N=4:")


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "mtfr", "fixture", "six-cycle", "--out",
                          str(tmp_path / "s.json")], capture_output=True, text=True)
    assert out.returncode == 0
    out = subprocess.run([sys.executable, "-m", "mtfr", "cycles", "--network", str(tmp_path / "s.json")],
                         capture_output=True, text=True)
    assert out.stdout.strip() == "cycles: 1"
