"""Command-line interface: subcommands, JSON/CSV payloads, exit codes."""

import json
import math
from math import pi

import pytest

from fricke_zeros.cli import (
    EXIT_CHECK_FAILURE,
    EXIT_PASS,
    EXIT_USAGE,
    main,
)
from fricke_zeros.fricke import f_restricted, m_count


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    return code, json.loads(out)


def test_zeros_command(capsys):
    code, doc = run_json(capsys, "zeros", "--level", "2", "--weight", "12")
    assert code == EXIT_PASS
    assert doc["verdict"] == "pass"
    (res,) = doc["results"]
    assert res["weight"] == 12
    assert len(res["zeros"]) == m_count(12, 2) == 1
    assert res["orders"] == res["expected_orders"] == {"v_i": 0, "v_rho": 2}
    lo, hi = res["zeros"][0]["bracket"]
    assert hi - lo <= 1e-10


def test_zeros_weight_range(capsys):
    code, doc = run_json(capsys, "zeros", "--level", "3", "--weights", "8..12")
    assert code == EXIT_PASS
    assert [r["weight"] for r in doc["results"]] == [8, 10, 12]


def test_valence_command(capsys):
    code, doc = run_json(capsys, "valence", "--level", "1", "--weight", "4")
    assert code == EXIT_PASS
    (res,) = doc["results"]
    assert res["lhs"] == res["rhs"] == "1/3"  # weight 4: a third from rho
    code, doc = run_json(capsys, "valence", "--level", "3", "--weight", "10")
    (res,) = doc["results"]
    assert res["lhs"] == "5/3"  # 1/2 + 1/6 + 1
    assert res["v_i"] == 1 and res["v_rho"] == 1


def test_bounds_command_level1(capsys):
    code, doc = run_json(capsys, "bounds", "--level", "1", "--weights", "8..40")
    assert code == EXIT_PASS
    names = [c["name"] for c in doc["certificates"]]
    assert "r1bound<2" in names


def test_bounds_command_level2(capsys):
    code, doc = run_json(capsys, "bounds", "--level", "2", "--weight", "8")
    assert code == EXIT_PASS
    names = {c["name"] for c in doc["certificates"]}
    assert any(n.startswith("term:") for n in names)
    assert any(n.startswith("count:") for n in names)
    assert all(c["verdict"] == "pass" for c in doc["certificates"])


def test_spaces_command(capsys):
    code, doc = run_json(capsys, "spaces", "--level", "3", "--weights", "8..14")
    assert code == EXIT_PASS
    dims = {r["k"]: r["dimension"] for r in doc["results"]}
    assert dims == {8: 2, 10: 2, 12: 3, 14: 2}
    idents = [c for c in doc["certificates"] if c["name"].startswith("identity:")]
    assert len(idents) == 3
    assert all(c["verdict"] == "pass" for c in idents)


def test_plot_command(capsys):
    code, out, err = run_cli(capsys, "plot", "--level", "2", "--weight", "8")
    assert code == EXIT_PASS
    lines = out.strip().split("\n")
    assert lines[0] == "theta,f_value"
    t0, v0 = map(float, lines[1].split(","))
    assert t0 == pytest.approx(pi / 2)
    assert v0 == pytest.approx(f_restricted(8, 2, t0), rel=1e-9)
    marker = lines.index("# located zeros")
    zero_rows = lines[marker + 2:]
    assert len(zero_rows) == 1  # m2(8) = 1


def test_plot_sign_pattern_matches_cosine(capsys):
    # the CSV signs at the integer points follow 2 cos(k theta / 2)
    code, out, _ = run_cli(capsys, "plot", "--level", "2", "--weight", "16")
    rows = [r for r in out.strip().split("\n")[1:] if not r.startswith(("#", "theta"))]
    for row in rows[:-1]:
        t, v = map(float, row.split(","))
        c = 2 * math.cos(8 * t)
        if abs(c) > 1.0:  # well inside a cosine lobe, sign is forced
            assert math.copysign(1, v) == math.copysign(1, c)


@pytest.mark.parametrize("argv", [
    ("zeros", "--level", "2", "--weight", "7"),      # odd weight
    ("zeros", "--level", "5", "--weight", "8"),      # bad level
    ("zeros", "--level", "2"),                        # missing weight
    ("zeros", "--level", "2", "--weights", "8--12"),  # malformed range
    ("zeros", "--level", "2", "--weight", "8", "--tol", "1e-15"),
    ("spaces", "--level", "1", "--weight", "8"),      # spaces needs 2 or 3
    ("plot", "--level", "2", "--weight", "8", "--format", "json"),
    ("nonsense",),
])
def test_usage_errors(capsys, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == EXIT_USAGE
    assert "usage error" in err


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, err = run_cli(
        capsys, "valence", "--level", "2", "--weight", "8", "--out", str(target)
    )
    assert code == EXIT_PASS
    assert out == ""
    doc = json.loads(target.read_text())
    assert doc["verdict"] == "pass"
    assert doc["config"]["command"] == "valence"


def test_json_is_deterministic(capsys):
    _, a = run_json(capsys, "bounds", "--level", "2", "--weight", "12")
    _, b = run_json(capsys, "bounds", "--level", "2", "--weight", "12")
    assert a == b
