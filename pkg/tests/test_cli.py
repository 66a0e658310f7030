"""Golden-output tests for the command line.

Set UPDATE_GOLDEN=1 to rewrite tests/golden/ from the current output.
"""

from __future__ import annotations

import os
import subprocess
import sys
from pathlib import Path

import pytest

from cli_cases import CASES, render
from padic_asai.cli import format_poly, run_command
from padic_asai.exact_algebra import PolyRing, UniPoly

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"


@pytest.fixture(autouse=True)
def _at_repo_root(monkeypatch):
    monkeypatch.chdir(ROOT)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    got = render(*run_command(CASES[name]))
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("UPDATE_GOLDEN"):
        path.write_text(got)
    assert path.exists(), f"missing golden file {path.name}; run with UPDATE_GOLDEN=1"
    assert got == path.read_text()


def test_all_subcommands_covered():
    assert {argv[0] for argv in CASES.values()} == {
        "transfer", "euler", "slope", "classify", "refine", "qfiber", "verify",
    }


def test_exit_codes():
    assert run_command(CASES["slope_split"])[0] == 0
    assert run_command(CASES["transfer_bad_weight"])[0] == 1
    assert run_command(CASES["slope_bad_syntax"])[0] == 1
    assert run_command(["euler", "--input", "tests/fixtures/d5_classical.pkt", "--prime", "5"])[0] == 1


def test_documented_examples():
    code, out, _ = run_command(CASES["slope_split"])
    assert out == "h = 2 (bruteforce=2, closed=2)\n"
    code, out, _ = run_command(CASES["euler_inert_7"])
    assert "identity: OK to X^8" in out and code == 0
    assert run_command(CASES["verify_default"])[0] == 0


def test_transfer_output_file(tmp_path):
    target = tmp_path / "report.txt"
    code, out, _ = run_command(["transfer", "--input", "tests/fixtures/d5_split.pkt", "--output", str(target)])
    assert code == 0 and out == ""
    assert target.read_text() == (ROOT / "tests/fixtures/report_split.txt").read_text()


def test_console_script_matches_in_process():
    argv = CASES["refine_inert_minus"]
    proc = subprocess.run(
        [sys.executable, "-m", "padic_asai", *argv], capture_output=True, text=True, cwd=ROOT, check=False
    )
    assert (proc.returncode, proc.stdout, proc.stderr) == run_command(argv)


def test_format_poly():
    x = PolyRing(["a"]).gen("a")
    assert format_poly(UniPoly([1, -60, 1319])) == "1 - 60*X + 1319*X^2"
    assert format_poly(UniPoly([1, x, -1])) == "1 + (a)*X - X^2"
    assert format_poly(UniPoly()) == "0"
