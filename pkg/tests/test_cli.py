import json
import subprocess
import sys

import pytest

from equigeodesic.cli import main
from equigeodesic.engine import QuadraticSystem, generate_system
from equigeodesic.homspace import build_space


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spaces_lists_seven(capsys):
    code, out, _ = run(capsys, "spaces", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["families"]) == 7


def test_spaces_module_dims(capsys):
    code, out, _ = run(capsys, "spaces", "--family", "wallach-sp3")
    assert code == 0 and "module dims: (4, 4, 4)" in out
    code, out, _ = run(capsys, "spaces", "--family", "sphere-sp", "--n", "2", "--format", "json")
    assert json.loads(out)["module_dims"] == [3, 8]


def test_check_exit_codes(capsys):
    assert run(capsys, "check", "wallach-so", "--params", "1,3,2")[0] == 0
    code, out, _ = run(capsys, "check", "wallach-so", "--params", "2,2,2", "--format", "json")
    data = json.loads(out)
    assert code == 1
    assert all(c["passed"] for c in data["invariants"] if c["check"] == "reductivity")
    assert not data["reports"][0]["passed"]
    assert run(capsys, "check", "sphere-u", "--n", "3")[0] == 0


@pytest.mark.parametrize(
    "argv,count",
    [
        (["gen-system", "wallach-u3"], 6),
        (["gen-system", "wallach-sp3"], 12),
        (["gen-system", "stiefel-v1k", "--params", "3,2", "--partition", "so(3),m12|m13,m23"], 8),
        (["gen-system", "stiefel-v1k", "--params", "3,2", "--metric", "jensen"], 8),
    ],
)
def test_gen_system_counts(capsys, argv, count):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0 and len(json.loads(out)["equations"]) == count


def test_gen_system_json_roundtrip(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("EQUIGEODESIC_OUTPUT_DIR", str(tmp_path))
    code, _, _ = run(capsys, "gen-system", "wallach-sp3", "--format", "json", "--output", "w12.json")
    assert code == 0
    system = QuadraticSystem.from_json((tmp_path / "w12.json").read_text())
    assert system == generate_system(build_space("wallach-sp3"))


def test_gen_system_csv(capsys):
    code, out, _ = run(capsys, "gen-system", "wallach-u3", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "index,source_pair,target,equation" and len(lines) == 7


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "stiefel-v2", "--n", "5", "--samples", "20")
    assert code == 0 and "5/5 families pass" in out
    code, out, _ = run(capsys, "verify", "wallach-sp3", "--family", "5", "--samples", "5")
    assert code == 1 and "FAIL wallach-sp3/5" in out


def test_verify_jensen(capsys):
    code, out, _ = run(capsys, "verify", "stiefel-v1k", "--params", "3,2", "--metric", "jensen", "--samples", "5")
    assert code == 0 and "42/42 families pass" in out


def test_solve_reports(capsys):
    code, out, _ = run(capsys, "solve", "wallach-u3", "--restarts", "60", "--seed", "7", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["seed"] == 7
    assert all(len(s["support"]) == 1 for s in data["solutions"])
    assert data["catalog_match"]["resolved"]


def test_solve_deterministic_bytes(tmp_path, capsys):
    for name in ("a.json", "b.json"):
        run(capsys, "solve", "sphere-sp", "--n", "1", "--restarts", "30", "--seed", "4",
            "--format", "json", "--output", str(tmp_path / name))
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["gen-system", "nope"],
        ["gen-system"],
        ["gen-system", "wallach-u3", "--partition", "m12|m13"],
        ["verify", "wallach-u3", "--samples", "0"],
        ["solve", "sphere-u", "--params", "1,2"],
        ["verify", "wallach-u3", "--family", "9"],
        ["verify", "wallach-so", "--params", "2,2,2"],
        ["check", "wallach-u3", "--n", "3"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_space_file(tmp_path, capsys):
    path = tmp_path / "space.json"
    path.write_text(json.dumps({"family": "wallach-so", "params": [1, 3, 2]}))
    code, out, _ = run(capsys, "gen-system", "--space-file", str(path), "--format", "json")
    assert code == 0 and len(json.loads(out)["equations"]) == 11


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "equigeodesic", "spaces"], capture_output=True, text=True)
    assert proc.returncode == 0 and "sphere-sp" in proc.stdout
