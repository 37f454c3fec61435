"""End-to-end command line tests, including golden-file comparisons."""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from gadgetminer.cli import main
from gadgetminer.circuit import load_circuit, serialize_circuit
from gadgetminer.tableau import circuit_to_tableau

FIXTURES = Path(__file__).parent / "fixtures"
HOSTS = FIXTURES / "hosts"


def run_cli(argv) -> int:
    return main([str(a) for a in argv])


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc_info:
        run_cli(["--version"])
    assert exc_info.value.code == 0
    from gadgetminer import __version__

    assert capsys.readouterr().out.strip() == __version__


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "gadgetminer", "--version"],
        capture_output=True, text=True)
    assert out.returncode == 0


def test_mine_matches_golden(tmp_path, capsys):
    rc = run_cli(["mine", "--input", HOSTS, "--gadget-cnots", 2,
                  "--output", tmp_path / "out"])
    assert rc == 0
    report = (tmp_path / "out" / "report.json").read_bytes()
    summary = (tmp_path / "out" / "summary.csv").read_bytes()
    assert report == (FIXTURES / "golden_report.json").read_bytes()
    assert summary == (FIXTURES / "golden_summary.csv").read_bytes()
    manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
    assert manifest["circuits"] == 3
    assert manifest["candidates"] == 3
    assert manifest["gadgets"] == 1
    assert not manifest["truncated"]
    assert manifest["kernel_backend"] in ("compiled", "python")
    assert len(manifest["inputs"]) == 3
    for item in manifest["inputs"]:
        assert len(item["sha256"]) == 64
    out = capsys.readouterr().out
    assert "3 candidates, 1 classes, 1 gadgets" in out
    assert "C_g=2  N_r=3" in out


def test_mine_jobs_byte_identical(tmp_path):
    rc1 = run_cli(["mine", "--input", HOSTS, "--gadget-cnots", 2,
                   "--jobs", 1, "--output", tmp_path / "j1"])
    rc2 = run_cli(["mine", "--input", HOSTS, "--gadget-cnots", 2,
                   "--jobs", 4, "--output", tmp_path / "j4"])
    assert rc1 == rc2 == 0
    for name in ("report.json", "summary.csv"):
        assert (tmp_path / "j1" / name).read_bytes() == \
            (tmp_path / "j4" / name).read_bytes()


def test_mine_single_file_and_oversize(tmp_path):
    rc = run_cli(["mine", "--input", HOSTS / "host_a.txt",
                  "--gadget-cnots", 9, "--output", tmp_path / "out"])
    assert rc == 0
    assert json.loads((tmp_path / "out" / "report.json").read_text()) == []


def test_mine_truncation_exit_code(tmp_path):
    rc = run_cli(["mine", "--input", HOSTS, "--gadget-cnots", 2,
                  "--max-candidates", 1, "--output", tmp_path / "out"])
    assert rc == 2
    manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
    assert manifest["truncated"]
    assert "max_candidates" in manifest["truncation_reasons"]


def test_mine_missing_input(tmp_path, capsys):
    rc = run_cli(["mine", "--input", tmp_path / "nope",
                  "--gadget-cnots", 2, "--output", tmp_path / "out"])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_output_env_default(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("GADGETMINER_OUTPUT", str(tmp_path / "envout"))
    monkeypatch.chdir(tmp_path)
    rc = run_cli(["mine", "--input", HOSTS, "--gadget-cnots", 2])
    assert rc == 0
    assert (tmp_path / "envout" / "report.json").is_file()


def test_gen_stats_mine_pipeline(tmp_path, capsys):
    corpus_dir = tmp_path / "corpus"
    rc = run_cli(["gen", "--n", 4, "--k", 1, "--d", 2, "--count", 4,
                  "--attempts", 300, "--seed", 9, "--output", corpus_dir])
    assert rc == 0
    out = capsys.readouterr().out
    assert "wrote 4 encoders" in out
    assert (corpus_dir / "manifest.json").is_file()
    assert len(list(corpus_dir.glob("enc_*.txt"))) == 4

    rc = run_cli(["stats", corpus_dir])
    assert rc == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats["size"] == 4
    assert set(stats["code_parameters"]) <= {
        "[[4,1,2]]", "[[4,1,3]]", "[[4,1,4]]"}

    rc = run_cli(["mine", "--input", corpus_dir, "--gadget-cnots", 2,
                  "--output", tmp_path / "mined"])
    assert rc in (0, 2)
    assert (tmp_path / "mined" / "report.json").is_file()


def test_gen_deterministic(tmp_path):
    args = ["gen", "--n", 4, "--k", 1, "--d", 2, "--count", 3,
            "--attempts", 300, "--seed", 21]
    assert run_cli(args + ["--output", tmp_path / "a"]) == 0
    assert run_cli(args + ["--output", tmp_path / "b"]) == 0
    assert (tmp_path / "a" / "manifest.json").read_bytes() == \
        (tmp_path / "b" / "manifest.json").read_bytes()


def test_gen_failure_exit_code(tmp_path, capsys):
    rc = run_cli(["gen", "--n", 3, "--k", 1, "--d", 3, "--attempts", 20,
                  "--output", tmp_path / "c"])
    assert rc == 1
    err = capsys.readouterr().err
    assert "error:" in err and "20 attempts" in err


def test_catalog_listing(capsys):
    assert run_cli(["catalog"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert len(lines) == 9
    assert lines[0].startswith("DCX2")
    assert all("certificate=" in line for line in lines)


def test_catalog_circuit_output(tmp_path, capsys):
    assert run_cli(["catalog", "--family", "pl", "--generation", 2]) == 0
    text = capsys.readouterr().out
    assert text == "qubits 4\ncx 0 1\ncx 1 2\ncx 2 3\ncx 3 0\n"
    # round-trips through the parser
    p = tmp_path / "pl4.txt"
    p.write_text(text)
    assert load_circuit(p).cx_count == 4


def test_catalog_half_specified(capsys):
    assert run_cli(["catalog", "--family", "pl"]) == 1
    assert "error:" in capsys.readouterr().err


def test_canon_digest(capsys):
    path = HOSTS / "host_a.txt"
    assert run_cli(["canon", path]) == 0
    printed = capsys.readouterr().out.strip()
    assert printed == circuit_to_tableau(load_circuit(path)).digest()
    assert run_cli(["canon", path, "--rows"]) == 0
    out = capsys.readouterr().out.strip().split("\n")
    assert out[0] == printed
    assert len(out) == 5  # digest + one canonical row per qubit
    assert all(row[0] in "+-" for row in out[1:])


def test_canon_missing_file(tmp_path, capsys):
    assert run_cli(["canon", tmp_path / "none.txt"]) == 1
    assert "error:" in capsys.readouterr().err
