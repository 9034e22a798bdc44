"""The command line: README examples, golden outputs, exit codes, round-trips."""

import json
import os
import re
import subprocess
import sys
from pathlib import Path

import pytest

from entangle import cli
from entangle.io import parse

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden"

# K4 on {1,2,4,5} with 1-5 and 2-4 subdivided; its K4 torso has a
# four-vertex interface
INTERFACE_TOO_BIG = "6\n0 1\n0 5\n1 2\n1 4\n2 3\n2 5\n3 4\n4 5\n"


def _readme_examples():
    text = (ROOT / "README.md").read_text()
    out = []
    for block in re.findall(r"```console\n(.*?)```", text, re.S):
        cmd, expect = None, []
        for line in block.splitlines():
            if line.startswith("$ "):
                if cmd:
                    out.append((cmd, "\n".join(expect)))
                cmd, expect = line[2:], []
            else:
                expect.append(line)
        if cmd:
            out.append((cmd, "\n".join(expect)))
    return out


@pytest.fixture(scope="module")
def shell_env(tmp_path_factory):
    bindir = tmp_path_factory.mktemp("bin")
    wrapper = bindir / "entangle"
    wrapper.write_text(f'#!/bin/sh\nexec "{sys.executable}" -m entangle.cli "$@"\n')
    wrapper.chmod(0o755)
    env = dict(os.environ)
    env["PATH"] = f"{bindir}{os.pathsep}{env['PATH']}"
    env.pop("ENTANGLE_BUDGET", None)
    return env


EXAMPLES = _readme_examples()


def test_readme_has_examples():
    assert len(EXAMPLES) >= 8


@pytest.mark.parametrize("cmd,expected", EXAMPLES, ids=[c for c, _ in EXAMPLES])
def test_readme_example(cmd, expected, shell_env):
    res = subprocess.run(["bash", "-o", "pipefail", "-c", cmd], cwd=ROOT, env=shell_env,
                         capture_output=True, text=True, timeout=120)
    assert res.returncode == 0, res.stderr
    assert res.stdout.rstrip("\n") == expected


@pytest.mark.parametrize("args,golden", [
    (["decompose", "fixtures/fig1.edges"], "fig1_decompose.json"),
    (["check-ent3", "fixtures/d14.edges"], "d14_check_ent3.json"),
    (["entanglement", "fixtures/fig1.edges"], "fig1_entanglement.json"),
])
def test_golden_json(args, golden, tmp_path, monkeypatch):
    monkeypatch.chdir(ROOT)
    out = tmp_path / "out.json"
    assert cli.main(args + ["--json", str(out)]) == 0
    assert json.loads(out.read_text()) == json.loads((GOLDEN / golden).read_text())


def _stdin(monkeypatch, text):
    import io as _io
    monkeypatch.setattr(sys, "stdin", _io.StringIO(text))


def test_parse_error_exit_code(monkeypatch, capsys):
    _stdin(monkeypatch, "a b\nb\n")
    assert cli.main(["entanglement", "-"]) == cli.EXIT_INPUT
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "parse" and err["line"] == 1


def test_bad_molecule_parameters(capsys):
    assert cli.main(["generate", "molecule", "k=3", "b=0", "h=1"]) == cli.EXIT_INPUT
    assert json.loads(capsys.readouterr().err)["error"] == "input"


def test_budget_exit_code(monkeypatch, capsys):
    monkeypatch.chdir(ROOT)
    monkeypatch.setenv("ENTANGLE_BUDGET", "10")
    assert cli.main(["entanglement", "fixtures/fig1.edges"]) == cli.EXIT_BUDGET
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "budget" and err["estimate"] > 10


def test_max_k_too_small(monkeypatch, capsys):
    monkeypatch.chdir(ROOT)
    assert cli.main(["entanglement", "fixtures/fig1.edges", "--max-k", "2"]) == cli.EXIT_BUDGET
    assert json.loads(capsys.readouterr().err)["lowerBound"] == 3


def test_strict_flags_violation(monkeypatch, capsys):
    _stdin(monkeypatch, INTERFACE_TOO_BIG)
    assert cli.main(["check-ent3", "-", "--strict"]) == cli.EXIT_VIOLATED
    assert "violated" in capsys.readouterr().out


def test_strict_passes_consistent(monkeypatch):
    monkeypatch.chdir(ROOT)
    assert cli.main(["check-ent3", "fixtures/d14.edges", "--strict"]) == cli.EXIT_OK


def test_violation_report_json(monkeypatch, capsys):
    _stdin(monkeypatch, INTERFACE_TOO_BIG)
    assert cli.main(["check-ent3", "-", "--json", "-"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["verdict"] == "violated"
    (torso,) = rep["torsos"]
    assert torso["interfaceBase"] is None and torso["eachHingeInBase"] is True
    assert len(torso["interface"]) == 4


@pytest.mark.parametrize("fmt", ["edges", "json"])
def test_convert_round_trip(fmt, tmp_path, monkeypatch):
    monkeypatch.chdir(ROOT)
    out = tmp_path / f"g.{fmt}"
    assert cli.main(["convert", "fixtures/fig1.edges", "--to", fmt, "-o", str(out)]) == 0
    again = parse(out.read_text())
    orig = parse((ROOT / "fixtures/fig1.edges").read_text())
    assert again == orig
    assert [again.label(v) for v in range(again.n)] == [orig.label(v) for v in range(orig.n)]


def test_certificate_is_json(tmp_path, monkeypatch):
    monkeypatch.chdir(ROOT)
    cert = tmp_path / "cert.json"
    assert cli.main(["entanglement", "fixtures/fig1.edges", "--cert", str(cert)]) == 0
    obj = json.loads(cert.read_text())
    assert obj


def test_generated_families_parse(capsys):
    for args in (["cycle", "5"], ["clique", "4"], ["random-2conn", "7", "3", "2"],
                 ["twosum-chain", "seed=4", "links=3", "h=2"]):
        assert cli.main(["generate", *args]) == 0
        g = parse(capsys.readouterr().out)
        assert g.n >= 4
