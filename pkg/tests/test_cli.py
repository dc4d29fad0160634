from __future__ import annotations

import json
import subprocess
import sys

import pytest

from reconalg.cli import MACHINE_FORMAT, MACHINE_VERSION, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--n", "73", "--q", "56")
    assert code == 0
    assert out.splitlines()[0] == "[2,2,2,5,2,3]"


def test_verify_13_8_symmetric(capsys):
    code, out, _ = run(capsys, "verify", "--n", "13", "--q", "8", "--presentation", "symmetric")
    assert code == 0
    assert "11/11 relations verified" in out


def test_verify_out_of_scope(capsys):
    code, _, err = run(capsys, "verify", "--n", "11", "--q", "4")
    assert code == 2
    assert "n > 2q" in err and "out of scope" in err


def test_bad_parameters_exit_2(capsys):
    assert run(capsys, "verify", "--n", "4", "--q", "2")[0] == 2
    assert run(capsys, "verify", "--n", "7")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "sweep", "--max-n", "2")[0] == 2


def test_charts_only_for_supported(capsys):
    code, out, _ = run(capsys, "charts", "--n", "3", "--q", "2")
    assert code == 0
    assert "C2*D1^2*d1 - D1*d1 - C2 = 0" in out
    assert run(capsys, "charts", "--n", "7", "--q", "4")[0] == 2


def test_machine_format_header_and_stability(capsys):
    code, out1, _ = run(capsys, "relations", "--n", "7", "--q", "5", "--presentation", "symmetric", "--format", "machine")
    assert code == 0
    lines = [json.loads(x) for x in out1.splitlines()]
    assert lines[0] == {"kind": "header", "format": MACHINE_FORMAT, "version": MACHINE_VERSION, "command": "relations"}
    rels = [x for x in lines if x["kind"] == "relation"]
    assert len(rels) == 8
    assert all(isinstance(t[0], str) and isinstance(t[1], list) for r in rels for t in r["terms"])
    _, out2, _ = run(capsys, "relations", "--n", "7", "--q", "5", "--presentation", "symmetric", "--format", "machine")
    assert out1 == out2


@pytest.mark.parametrize(
    "argv",
    [
        ("series", "--n", "13", "--q", "8"),
        ("quiver", "--n", "73", "--q", "56"),
        ("invariants", "--n", "7", "--q", "5"),
        ("charts", "--n", "5", "--q", "3"),
        ("sweep", "--max-n", "7"),
        ("verify", "--n", "73", "--q", "56"),
    ],
)
def test_subcommands_machine_format(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "machine")
    assert code == 0
    lines = [json.loads(x) for x in out.splitlines()]
    assert lines[0]["kind"] == "header"
    assert len(lines) > 1


def test_series_columns(capsys):
    _, out, _ = run(capsys, "series", "--n", "13", "--q", "8")
    names = [line.split(":")[0].strip() for line in out.splitlines()[:8]]
    assert names == ["c", "d", "r", "i", "l", "b", "Delta", "Gamma"]
    assert "i: 0:13  1:8  2:3  3:1  4:0" in out


def test_quiver_text(capsys):
    _, out, _ = run(capsys, "quiver", "--n", "13", "--q", "8")
    assert "13 arrows" in out
    assert "k_2: 3 -> *" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "reconalg", "expand", "--n", "13", "--q", "8"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "[2,3,3]"
