import json
import subprocess
import sys

import pytest

from mcgpres.cli import main
from mcgpres.enumeration import cache_path
from mcgpres.presentation import Presentation, abelianization, from_json


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("MCG_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_present_text_torus(capsys):
    code, out, err = run(capsys, "present", "-g", "1", "-p", "0", "--simplify")
    assert code == 0
    P = Presentation.parse(out)
    assert len(P.generators) == 2 and len(P.relators) == 1
    assert "abelianization: Z" in err and "group: AM_{1,1,0}" in err


@pytest.mark.parametrize("fmt, marker", [("gap", "FreeGroup("), ("magma", "quo< F |"),
                                          ("json", '"generators"'), ("text", "<")])
def test_present_formats(capsys, fmt, marker):
    code, out, _ = run(capsys, "present", "-g", "1", "-p", "0", "--format", fmt)
    assert code == 0 and marker in out
    if fmt == "json":
        P = from_json(out)
        assert len(P.generators) == 14 and P.kind_counts() == {"a": 3, "b": 5, "c": 5}


def test_present_to_file(capsys, tmp_path):
    target = tmp_path / "out.txt"
    code, out, err = run(capsys, "present", "-g", "0", "-p", "3", "--simplify", "-o", str(target))
    assert code == 0 and "top graphs: 6" in out and not err
    assert abelianization(Presentation.parse(target.read_text())).rank == 1


def test_output_is_byte_identical_and_cache_neutral(capsys, isolated_cache, monkeypatch):
    argv = ["present", "-g", "0", "-p", "3", "--format", "json"]
    _, cold, _ = run(capsys, *argv)
    assert cache_path(isolated_cache, 0, 3).exists()
    _, warm, _ = run(capsys, *argv)
    monkeypatch.delenv("MCG_CACHE_DIR")
    other = isolated_cache.parent / "other"
    _, uncached, _ = run(capsys, *argv, "--cache-dir", str(other))
    assert cache_path(other, 0, 3).exists()
    assert cold == warm == uncached


@pytest.mark.parametrize("g, p", [(0, 0), (0, -1), (-1, 3)])
def test_invalid_parameters_exit_2(capsys, g, p):
    code, _, err = run(capsys, "present", "-g", str(g), "-p", str(p))
    assert code == 2 and "error" in err


def test_budget_exceeded_exit_3(capsys):
    code, _, err = run(capsys, "present", "-g", "2", "-p", "0", "--budget-secs", "0.01")
    assert code == 3 and "error" in err


def test_list_l(capsys):
    code, out, _ = run(capsys, "list-l", "-g", "0", "-p", "3")
    assert code == 0 and len(out.splitlines()) == 6
    code, out, err = run(capsys, "list-l", "-g", "0", "-p", "1")
    assert code == 0 and out == "" and err


def test_complex_json(capsys):
    code, out, _ = run(capsys, "complex", "-g", "1", "-p", "0")
    data = json.loads(out)
    assert code == 0 and data["spanning_tree"] == ["z1e1", "z1e3", "z1e1e2"]


def test_check_passes(capsys):
    code, out, _ = run(capsys, "check", "-g", "0", "-p", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)
    assert any("cross-check" in line for line in lines)


def test_check_reports_corrupt_cache(capsys, isolated_cache):
    run(capsys, "list-l", "-g", "1", "-p", "0")
    cache_path(isolated_cache, 1, 0).write_text("[\"(e1,-e1)\"]")
    code, out, _ = run(capsys, "check", "-g", "1", "-p", "0")
    assert code == 1 and "FAIL  cache integrity" in out
    code, out, _ = run(capsys, "check", "-g", "1", "-p", "0")
    assert code == 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "mcgpres", "present", "-g", "0", "-p", "2",
                           "--simplify", "--cache-dir", str(tmp_path)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert abelianization(Presentation.parse(proc.stdout)).rank == 1
