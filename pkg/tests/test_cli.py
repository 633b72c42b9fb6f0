import json
import subprocess
import sys

import pytest

from spinnet.cli import main
from spinnet.graph import dumbbell, tetrahedron, theta
from spinnet.netfile import parse_network, serialize_network


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def write(tmp_path):
    def _write(net, name="net.json"):
        path = tmp_path / name
        path.write_text(serialize_network(net))
        return str(path)

    return _write


def test_eval_theta_penrose(capsys, write):
    assert run(capsys, "eval", write(theta(2, 2, 2)), "--method", "penrose", "--norm", "P") == (0, "-24\n", "")


def test_eval_norms(capsys, write):
    path = write(theta(2, 2, 2))
    assert run(capsys, "eval", path, "--norm", "S")[1] == "-24\n"
    assert run(capsys, "eval", path, "--norm", "U")[1] == "-1*sqrt(1) -1\n"
    assert run(capsys, "eval", path, "--method", "cg", "--norm", "P")[1] == "+/-24\n"
    assert run(capsys, "eval", path, "--method", "cg", "--norm", "CG")[1] == "-3\n"


def test_eval_tetrahedron_unitary(capsys, write):
    out = run(capsys, "eval", write(tetrahedron(2)), "--norm", "U")[1]
    assert out.split()[0].endswith("sqrt(1/36)")
    assert out.split()[1].lstrip("-") == "0.166666666666667"


def test_bridge_zero_is_success(capsys, write):
    code, out, _ = run(capsys, "eval", write(dumbbell(3, 4, 2)), "--norm", "U")
    assert code == 0 and out.startswith("0*sqrt(0)")


def test_inadmissible_exit_code(capsys, write):
    code, out, err = run(capsys, "eval", write(theta(1, 1, 1)))
    assert code == 1 and "inadmissible" in err
    code, out, _ = run(capsys, "--json", "eval", write(theta(1, 1, 1)))
    assert code == 1 and json.loads(out)["error"] == "inadmissible"


def test_check(capsys, write):
    assert run(capsys, "check", write(theta(2, 2, 2)))[:2] == (0, "admissible\n")
    assert run(capsys, "check", write(theta(1, 1, 1)))[0] == 1


def test_schema_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"vertices": [], "edges": [], "decoration": {}, "extra": 1}')
    code, out, _ = run(capsys, "eval", str(path), "--json")
    assert code == 2 and json.loads(out)["error"] == "schema"
    assert run(capsys, "eval", str(tmp_path / "missing.json"))[0] == 2


def test_resource_exit_code(capsys, write, monkeypatch):
    monkeypatch.setenv("SPINNET_STATE_LIMIT", "10")
    code, out, _ = run(capsys, "eval", write(tetrahedron(2)), "--method", "penrose", "--json")
    assert code == 3 and json.loads(out)["error"] == "resource"


def test_gen_and_orient(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "drum", "s=3", "--gamma", "4")
    assert code == 0
    net = parse_network(out).network
    assert len(net.vertices) == 6 and set(net.decoration.values()) == {4}
    path = tmp_path / "drum.json"
    path.write_text(out)
    code, out, _ = run(capsys, "orient", str(path))
    doc = parse_network(out)
    assert doc.orientation is not None and doc.gates is not None


def test_gen_lists_and_seed(capsys):
    _, out, _ = run(capsys, "gen", "tetrahedron", "gamma=1,1,2,1,1,2")
    assert parse_network(out).network.decoration[2] == 2
    first = run(capsys, "gen", "random", "n_vertices=8", "--seed", "5")[1]
    again = run(capsys, "gen", "random", "n_vertices=8", "--seed", "5")[1]
    other = run(capsys, "gen", "random", "n_vertices=8", "--seed", "6")[1]
    assert first == again != other


def test_gen_bad_params(capsys):
    assert run(capsys, "gen", "theta", "q=1")[0] == 2
    assert run(capsys, "gen", "theta", "a")[0] == 2


def test_sixj(capsys):
    assert run(capsys, "sixj", "2", "2", "2", "2", "2", "2")[1] == "1*sqrt(1/36) 0.166666666666667\n"
    assert run(capsys, "sixj", "1", "1", "1", "1", "1", "1")[0] == 1


def test_verify(capsys, write):
    code, out, _ = run(capsys, "verify", write(theta()), "--max-gamma", "2")
    assert code == 0
    assert out.splitlines()[-1] == "checked 11 decorations, 0 mismatches"


def test_series_and_rho(capsys, write):
    path = write(theta())
    code, out, _ = run(capsys, "series", path, "--nmax", "2")
    assert out == "n,value,mode\n0,1,exact\n1,-24,exact\n2,630,exact\n"
    code, out, _ = run(capsys, "series", path, "--nmax", "1", "--float")
    assert out.splitlines()[2].startswith("1,")
    code, out, _ = run(capsys, "rho", write(tetrahedron(2)), "--nmax", "12")
    data = json.loads(out)
    assert code == 0 and data["upper_bound"] == "6*log(3)" and data["within_bound"]


def test_timings_go_to_stderr(capsys, write):
    code, out, err = run(capsys, "eval", write(theta()), "--timings")
    assert out == "-24\n" and err.startswith("elapsed")


def test_module_entry_point(write):
    proc = subprocess.run([sys.executable, "-m", "spinnet.cli", "eval", write(theta())],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "-24\n"
