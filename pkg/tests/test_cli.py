import subprocess
import sys

import pytest

from icelab import fixture_path
from icelab.cli import EXIT_CAP, EXIT_INPUT, EXIT_OK, EXIT_VERIFY, run

A2 = str(fixture_path("a2"))


def test_catalog(capsys):
    assert run(["catalog", A2]) == EXIT_OK
    out = capsys.readouterr().out
    assert "entries 3" in out
    assert "tau=01" in out


def test_syntax_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text("field 2\nvertex 1\nbogus line\n")
    assert run(["catalog", str(bad)]) == EXIT_INPUT
    assert "line 3" in capsys.readouterr().err


def test_missing_file():
    assert run(["catalog", "/nonexistent.alg"]) == EXIT_INPUT


def test_dim_bound_too_small(capsys):
    assert run(["catalog", A2, "--dim-bound", "1"]) == EXIT_INPUT
    assert "missing" in capsys.readouterr().err


def test_cap_exceeded():
    assert run(["torf", str(fixture_path("a4")), "--cap", "100"]) == EXIT_CAP


def test_enumerate_count(capsys):
    assert run(["enumerate", A2, "--kind", "cogen_preordered", "--m", "2"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[-1] == "count 12"


def test_verify_two_vertex(capsys):
    assert run(["verify", A2, "--m", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0].startswith("#")
    assert any("functorially finite" in x for x in lines if x.startswith("#"))
    p, t = lines[-1].split()[1].split("/")
    assert p == t and int(t) > 0
    assert "FAIL" not in out


def test_verify_m0_vacuous(capsys):
    assert run(["verify", A2, "--m", "0", "--skip-properties"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[-1].startswith("SUMMARY")


def test_verify_failure_exit(monkeypatch, capsys):
    from icelab import sequences

    real = sequences.verify_bijections

    def broken(*a, **k):
        rep = real(*a, **k)
        rep.checks.append(sequences.Check("injected", False, "witness"))
        return rep

    monkeypatch.setattr("icelab.cli.verify_bijections", broken)
    assert run(["verify", A2, "--m", "0", "--skip-properties"]) == EXIT_VERIFY
    assert "CHECK injected FAIL witness" in capsys.readouterr().out


def test_jperp(capsys):
    assert run(["jperp", A2, "--module", "11"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "jperp {11} = {10}"
    assert run(["jperp", A2, "--module", "10,01"]) == EXIT_INPUT
    assert run(["jperp", A2, "--module", "zz"]) == EXIT_INPUT


def test_dot_and_determinism(tmp_path):
    a, b = tmp_path / "a.dot", tmp_path / "b.dot"
    assert run(["torf", A2, "--dot", str(a), "--oracle"]) == EXIT_OK
    assert run(["torf", A2, "--dot", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().count("->") == 5


def test_reports_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        assert run(["verify", A2, "--m", "1", "--output", str(path)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_cache_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("ICELAB_CACHE_DIR", str(tmp_path))
    assert run(["catalog", A2]) == EXIT_OK
    first = capsys.readouterr().out
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    assert run(["catalog", A2]) == EXIT_OK
    assert capsys.readouterr().out == first


def test_field_override(capsys):
    assert run(["catalog", A2, "--field", "3"]) == EXIT_OK
    assert "p=3" in capsys.readouterr().out


def test_bad_bounds():
    assert run(["catalog", A2, "--mult-bound", "0"]) == EXIT_INPUT


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "icelab", "enumerate", A2, "--kind", "maxjoin_seqs", "--m", "1"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[-1] == "count 5"


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        run(["nonsense"])
    assert info.value.code == 2
