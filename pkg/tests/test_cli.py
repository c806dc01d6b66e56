import json
import subprocess
import sys

import pytest

from sumrank.cli import main

EX2_ARGS = [
    "--q", "7", "--curve", "x^3+3", "--cons", "2",
    "--k", "6", "--k1", "3", "--split-x", "1", "--places", "0,2,3,4,5,6",
]


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith(("{", "[")) else out


def test_construct_example2(capsys):
    code, data = run_json(capsys, ["construct", *EX2_ARGS])
    assert code == 0
    assert data["derived"] == {"dimension": 6, "distance_bound": 6, "length": 24, "s": 6}
    assert data["construction"] == 2 and data["k"] == 6 and data["k1"] == 3
    assert data["eval_places"] == [0, 2, 3, 4, 5, 6]
    assert len(data["message_basis"]) == 6


def test_construct_cons1_all_but_inf(capsys):
    code, data = run_json(
        capsys,
        ["construct", "--q", "7", "--curve", "x^3+3", "--cons", "1",
         "--k", "6", "--k1", "3", "--places", "all-but-inf"],
    )
    assert code == 0
    assert data["derived"] == {"dimension": 6, "distance_bound": 8, "length": 28, "s": 7}


def test_construct_parameter_violation_exit_code(capsys):
    code = main(["construct", "--q", "7", "--curve", "x^3+3", "--cons", "1",
                 "--k", "6", "--k1", "6", "--places", "all"])
    err = capsys.readouterr().err
    assert code == 2
    assert "k1 < k" in err


def test_construct_round_trip_byte_identical(tmp_path, capsys):
    first = tmp_path / "code.json"
    second = tmp_path / "code2.json"
    assert main(["construct", *EX2_ARGS, "--out", str(first)]) == 0
    assert main(["construct", "--from-json", str(first), "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_analyze_example2(capsys):
    code, data = run_json(capsys, ["analyze", *EX2_ARGS])
    assert code == 0
    assert data["mode"] == "exhaustive"
    assert data["d_min"] == 6
    assert sum(data["distribution"]["A"]) == 7**6
    assert data["bounds"]["singleton_ok"] and data["bounds"]["meets_designed_distance"]
    assert not data["bounds"]["msrd"]
    assert data["wall_time_s"] > 0


def test_analyze_from_code_file(tmp_path, capsys):
    path = tmp_path / "code.json"
    assert main(["construct", *EX2_ARGS, "--out", str(path)]) == 0
    code, data = run_json(capsys, ["analyze", "--code", str(path)])
    assert code == 0 and data["d_min"] == 6


def test_analyze_csv_format(capsys):
    code = main(["analyze", *EX2_ARGS, "--format", "csv"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "i,A_i"
    assert lines[1] == "0,1"
    assert len(lines) == 14


def test_analyze_too_large_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("SRCODES_LIMIT", "1000")
    code = main(["analyze", *EX2_ARGS])
    assert code == 3
    assert "TooLarge" in capsys.readouterr().err


def test_analyze_sample_mode_labeled(capsys, monkeypatch):
    monkeypatch.setenv("SRCODES_LIMIT", "1000")
    code, data = run_json(capsys, ["analyze", *EX2_ARGS, "--sample", "3000", "--seed", "5"])
    assert code == 0
    assert data["mode"] == "sampled"
    assert data["distribution"]["exhaustive"] is False
    assert data["distribution"]["samples"] == 3000
    assert data["d_upper_bound_estimate"] >= 6


def test_analyze_explicit_limit_flag(capsys):
    code = main(["analyze", *EX2_ARGS, "--limit", "100"])
    assert code == 3
    capsys.readouterr()


def test_verify_default_passes(capsys):
    code, data = run_json(capsys, ["verify", "--cases", "40"])
    assert code == 0
    assert data["passed"] is True
    names = {s["name"] for s in data["suites"]}
    assert {"field_axioms", "valuation_multiplicativity", "valuation_triangle",
            "principal_divisor_degree_zero", "structural_identity",
            "rr_dimensions", "distance_bound"} <= names


def test_verify_seed_reproducible(capsys):
    _, d1 = run_json(capsys, ["verify", "--cases", "25", "--seed", "99"])
    _, d2 = run_json(capsys, ["verify", "--cases", "25", "--seed", "99"])
    assert d1 == d2


def test_verify_injected_det_bug_fails(capsys):
    code, data = run_json(capsys, ["verify", "--cases", "40", "--inject-det-bug"])
    assert code == 4
    suite = next(s for s in data["suites"] if s["name"] == "structural_identity")
    assert not suite["passed"]
    assert "f1=" in suite["failures"][0]  # concrete counterexample named


def test_verify_non_squarefree_curve_surfaced(capsys):
    # (x-1)^2 (x-2) = x^3 + 3x^2 + 5x + 5 over GF(7)
    code = main(["verify", "--q", "7", "--curve", "x^3+3*x^2+5*x+5"])
    err = capsys.readouterr().err
    assert code == 2
    assert "NotSquareFree" in err


@pytest.mark.parametrize("name", ["ex1a", "ex1b", "ex2"])
def test_examples_pass(capsys, name):
    code, data = run_json(capsys, ["example", name])
    assert code == 0
    assert data["passed"] is True
    assert all(c["match"] for c in data["checks"])


def test_example_ex2_diff_report(capsys):
    _, data = run_json(capsys, ["example", "ex2"])
    assert sum(data["diff_vs_reference"]) == -3
    assert sum(data["reference_A"]) == 117652
    assert data["notes"]


def test_example_ex1a_parameter_note(capsys):
    _, data = run_json(capsys, ["example", "ex1a"])
    assert any("s = 7" in note and "s = 6" in note for note in data["notes"])


def test_rrbasis_infinity(capsys):
    code, data = run_json(capsys, ["rrbasis", "--q", "7", "--curve", "x^3+3", "--place", "inf", "--k", "6"])
    assert code == 0
    assert data["dimension"] == 6
    assert [e["valuation"] for e in data["basis"]] == [0, -2, -3, -4, -5, -6]


def test_rrbasis_affine_point(capsys):
    code, data = run_json(
        capsys, ["rrbasis", "--q", "7", "--curve", "x^3+3", "--place", "pt=(1,5)", "--k", "3"]
    )
    assert code == 0
    assert data["dimension"] == 3
    assert data["place"] == {"x": 1, "y": 5}
    assert [e["valuation"] for e in data["basis"]] == [-3, -2, 0]


def test_rrbasis_bad_point_rejected(capsys):
    code = main(["rrbasis", "--q", "7", "--curve", "x^3+3", "--place", "pt=(1,3)", "--k", "3"])
    assert code == 2
    assert "curve equation" in capsys.readouterr().err


def test_rrbasis_place_x_spec(capsys):
    code, data = run_json(capsys, ["rrbasis", "--q", "7", "--curve", "x^3+3", "--place", "x=1", "--k", "2"])
    assert code == 0
    assert data["place"] == {"x": 1, "y": 2}  # canonical root first


def test_curve_spec_string(capsys):
    code, data = run_json(
        capsys,
        ["construct", "--spec", "q=7;f=x^3+3", "--cons", "1", "--k", "4", "--k1", "2", "--places", "all"],
    )
    assert code == 0
    assert data["curve"] == {"f": [3, 0, 0, 1], "q": "7"}


def test_extension_field_through_cli(capsys):
    code, data = run_json(
        capsys,
        ["analyze", "--q", "3^2", "--mod", "1,0,1", "--curve", "x^3+x+1", "--cons", "1",
         "--k", "3", "--k1", "1", "--places", "all"],
    )
    assert code == 0
    assert data["code"]["curve"]["q"] == "3^2"
    assert data["code"]["curve"]["mod"] == [1, 0, 1]
    assert sum(data["distribution"]["A"]) == 9**3
    assert data["d_min"] >= data["code"]["derived"]["distance_bound"]


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "sumrank.cli", "example", "ex1a"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"] is True
