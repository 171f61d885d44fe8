import json
import subprocess
import sys

import pytest

from symineq.cli import EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, EXIT_VIOLATION, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    lines = [json.loads(l) for l in out.out.splitlines() if l.strip()]
    return code, lines, out.err


def test_partitions(capsys):
    code, lines, err = run(capsys, "partitions", "4")
    assert code == EXIT_OK
    assert lines == [[4], [3, 1], [2, 2], [2, 1, 1], [1, 1, 1, 1]]
    assert "|Par(4)| = 5" in err


def test_majorize(capsys):
    code, lines, _ = run(capsys, "majorize", "3,1,1,1", "2,2,2")
    assert code == EXIT_OK
    assert lines[0]["comparable"] is False and lines[0]["lambda"] == [2, 2, 2]


def test_reduce(capsys):
    code, lines, _ = run(capsys, "reduce", "H", "2", "2", "1")
    assert code == EXIT_OK
    poly = lines[0]["poly"]
    assert {tuple(t["e"]): t["c"] for t in poly["terms"]} == {(2,): "1/1", (1,): "1/1", (0,): "1/1"}


def test_check_pair_proved(capsys):
    code, lines, _ = run(capsys, "check-pair", "H", "3", "4,4", "5,2,1", "--no-cache", "--samples", "300")
    assert code == EXIT_OK
    assert "config" in lines[0]
    assert lines[-1]["summary"] == "ProvedNonnegative"


def test_check_pair_violation(capsys):
    code, lines, _ = run(capsys, "check-pair", "M", "3", "2,2", "3,1", "--no-cache", "--samples", "300")
    assert code == EXIT_VIOLATION
    assert lines[-1]["summary"] == "NegativeWitness"


def test_check_pair_unknown_without_ds(capsys):
    code, lines, _ = run(capsys, "check-pair", "H", "3", "4,4", "5,2,1", "--no-cache", "--samples", "50",
                         "--ds-depth", "0")
    assert code == EXIT_UNKNOWN and lines[-1]["summary"] == "Unknown"


@pytest.mark.parametrize("argv", [
    ["partitions", "0"],
    ["majorize", "2,1", "2"],
    ["majorize", "1,2", "3"],
    ["reduce", "Q", "2", "2", "1"],
    ["reduce", "H", "2", "2", "5"],
    ["check-pair", "M", "2", "1,1,1", "3"],
    ["scan", "1", "3"],
    ["bogus"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE


def test_repro_reports(capsys):
    code, lines, _ = run(capsys, "repro", "j2")
    assert code == EXIT_OK
    assert lines[1]["overall"] == "pass" and "ms" not in lines[1]["checks"][0]
    code, lines, _ = run(capsys, "repro", "family", "--d", "8", "--n", "2", "--samples", "100", "--timings")
    assert code == EXIT_OK and "ms" in lines[1]["checks"][0]


def test_scan_cache_reproducible(tmp_path, capsys):
    cache = tmp_path / "cache.json"
    args = ["scan", "5", "3", "--samples", "200", "--cache", str(cache), "--threads", "1"]
    code1, _, err1 = run(capsys, *args)
    first = cache.read_bytes()
    main(args)
    out2 = capsys.readouterr()
    main(args[:-4] + ["--no-cache"])
    out3 = capsys.readouterr()
    main(args)
    out4 = capsys.readouterr()
    assert code1 == EXIT_OK and "cache hits 0" in err1
    assert "cache hits 49" in out2.err
    assert cache.read_bytes() == first
    assert out2.out == out3.out == out4.out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symineq", "partitions", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["[3]", "[2, 1]", "[1, 1, 1]"]
