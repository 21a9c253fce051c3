"""
Tests for the sturmdet command line
"""
import json

import pytest

from app import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_sturm_cubic_agrees(capsys):
    """Both routes agree on x^3 - 3x + 1."""
    code, out, _ = run(capsys, "sturm", "--coeffs", "1,0,-3,1")
    assert code == 0
    assert "✅" in out
    assert "f_3 = 9/4" in out


def test_sturm_json(capsys):
    """JSON output lists every member with its gamma and c."""
    code, out, _ = run(capsys, "sturm", "--coeffs", "1,0,-3,1", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["all_equal"]
    assert report["termination"] == "constant_reached"
    assert report["degrees"] == [3, 2, 1, 0]
    assert report["members"][3]["determinantal"] == ["9/4"]
    assert report["members"][3]["gamma"] == "1/108"
    assert report["members"][3]["c"] == "243"


def test_sturm_degenerate_exits_two(capsys):
    """x^2 stops at c(2) = 0."""
    code, out, _ = run(capsys, "sturm", "--coeffs", "1,0,0", "--json")
    report = json.loads(out)
    assert code == 2
    assert report["degenerate_index"] == 2
    assert report["termination"] == "zero_remainder"


def test_sturm_pair(capsys):
    """--pair starts the chain at (f1, f2)."""
    code, out, _ = run(capsys, "sturm", "--coeffs", "1,0,0", "--pair", "1,-1", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["mode"] == "pair"
    assert report["members"][-1]["determinantal"] == ["-1"]


def test_sturm_from_file(capsys, tmp_path):
    """--input reads the JSON polynomial format."""
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"coeffs": ["1", "0", "-3", "1"]}))
    code, _, _ = run(capsys, "sturm", "--input", str(path))
    assert code == 0


USAGE_CASES = [
    {"name": "bad coefficient", "argv": ["sturm", "--coeffs", "1,a"]},
    {"name": "zero leading coefficient", "argv": ["sturm", "--coeffs", "0,1"]},
    {"name": "no subcommand", "argv": []},
    {"name": "no polynomial", "argv": ["sturm"]},
    {"name": "zero trials", "argv": ["verify", "--trials", "0"]},
    {"name": "bad degree span", "argv": ["verify", "--degrees", "5"]},
    {"name": "endpoint is a root", "argv": ["roots", "--coeffs", "1,0,-1", "--interval", "1..2"]},
    {"name": "empty interval", "argv": ["roots", "--coeffs", "1,0,-1", "--interval", "2..1"]},
    {"name": "constant polynomial", "argv": ["sturm", "--coeffs", "5"]},
    {"name": "n below m + 1", "argv": ["euler", "--m", "4", "--n-list", "10,4"]},
    {"name": "n too small for beta", "argv": ["euler", "--n-list", "3"]},
    {"name": "n list with small entries", "argv": ["euler", "--n-list", "2,4"]},
]


@pytest.mark.parametrize("case", USAGE_CASES, ids=[c["name"] for c in USAGE_CASES])
def test_usage_errors_exit_three(capsys, case):
    """Input and usage problems exit with 3 and a message on stderr."""
    code, _, err = run(capsys, *case["argv"])
    assert code == 3
    assert "error:" in err


def test_roots(capsys):
    """Three real roots inside the Cauchy bound."""
    code, out, _ = run(capsys, "roots", "--coeffs", "1,0,-3,1", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["count"] == 3
    assert report["interval"] == ["-4", "4"]
    assert len(report["intervals"]) == 3


def test_roots_negative_endpoint(capsys):
    """Negative endpoints in the --interval= form."""
    code, out, _ = run(capsys, "roots", "--coeffs=1,0,-3,1", "--interval=-2..0")
    assert code == 0
    assert "distinct real roots: 1" in out


def test_roots_negative_values_as_separate_tokens(capsys):
    """--coeffs -1,... and --interval -2..0 are read as values, not options."""
    code, out, _ = run(capsys, "roots", "--coeffs", "-1,0,3,-1", "--interval", "-2..0")
    assert code == 0
    assert "distinct real roots: 1" in out


def test_sturm_negative_pair(capsys):
    """--pair -1,1 is read as the member 1 - x."""
    code, out, _ = run(capsys, "sturm", "--coeffs", "1,0,0", "--pair", "-1,1", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["mode"] == "pair"


def test_verify_is_deterministic(capsys, tmp_path):
    """The same seed gives byte-identical JSON lines."""
    code, first, _ = run(capsys, "verify", "--trials", "1", "--seed", "7", "--json")
    _, second, _ = run(capsys, "verify", "--trials", "1", "--seed", "7", "--json")
    assert code == 0
    assert first == second
    summary = json.loads(first.strip().splitlines()[-1])
    assert summary["passed"]
    assert summary["failures"] == 0


def test_verify_injected_violation(capsys):
    """A counterexample makes verify exit 1."""
    code, out, _ = run(capsys, "verify", "--trials", "1", "--inject-violation")
    assert code == 1
    assert "❌" in out


def test_verify_writes_out_file(capsys, tmp_path):
    """--out replaces stdout."""
    path = tmp_path / "report.jsonl"
    code, out, _ = run(capsys, "verify", "--trials", "1", "--json", "--out", str(path))
    assert code == 0
    assert out == ""
    assert json.loads(path.read_text().splitlines()[-1])["passed"]


def test_euler(capsys):
    """All Euler checks pass with the default n list."""
    code, out, _ = run(capsys, "euler", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["passed"]
    assert report["asymptotic"]["points"][0]["value"] == "-12/19"
    assert report["hilbert_variant"]["2"] == "4/525"


def test_bench_csv(capsys):
    """One row per degree, route and repetition."""
    code, out, _ = run(capsys, "bench", "--degrees", "4..5", "--trials", "1")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "degree,route,rep,nanos,max_bits,correct"
    assert len(lines) == 1 + 2 * 2
    assert all(line.endswith(",True") for line in lines[1:])
