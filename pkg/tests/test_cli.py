import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from nlie_kit import __version__
from nlie_kit.cli import main, parse_range, UsageError
from nlie_kit.nlie import dumps, vector_product_algebra

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def broken_v3_text():
    lines = dumps(vector_product_algebra(3)).splitlines()
    # [e1,e2,e3] = e4 becomes e1 + e4
    lines[1] = "1 2 3 -> 1/1 0/1 0/1 1/1"
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- verify


def test_verify_vn():
    code, out, _ = run("verify", "--vn", "4")
    assert code == 0
    for line in ("filippov: pass", "jacobi(L): pass", "iso so5: pass"):
        assert line in out


def test_verify_file_with_flipped_constant(tmp_path):
    path = tmp_path / "broken.nlie"
    path.write_text(broken_v3_text())
    code, out, _ = run("verify", "--file", str(path))
    assert code == 1
    assert "filippov: FAIL" in out and "first: (1, 2), second: (2, 3, 4)" in out


def test_verify_file_that_passes(tmp_path):
    path = tmp_path / "v3.nlie"
    path.write_text(dumps(vector_product_algebra(3)))
    code, out, _ = run("verify", "--file", str(path))
    assert code == 0 and "filippov: pass" in out


def test_verify_invalid_arity():
    code, _, err = run("verify", "--vn", "1")
    assert code == 2 and "invalid arity" in err


@pytest.mark.parametrize(
    "text",
    ["nlie 3 4\n1 2 3 -> 1 0\n", "garbage\n", "nlie 3 4\n1 2 3 -> a b c d\n", "nlie x 4\n"],
)
def test_verify_parse_error(tmp_path, text):
    path = tmp_path / "bad.nlie"
    path.write_text(text)
    code, _, err = run("verify", "--file", str(path))
    assert code == 2
    assert err.startswith("parse error: line ") and "column" in err


def test_verify_missing_file(tmp_path):
    code, _, err = run("verify", "--file", str(tmp_path / "none.nlie"))
    assert code == 2 and "Traceback" not in err


# ---------------------------------------------------------------- prolong


def test_prolong_harmonic_table():
    code, out, _ = run("prolong", "--n", "4", "--t", "0..3", "--json", "-")
    assert code == 0
    doc = json.loads(out)
    rows = doc["tasks"][0]["rows"]
    assert [r["dim"] for r in rows] == [1, 5, 14, 30]
    assert all(r["verdict"] for r in rows)
    assert [r["highest_weight"] for r in rows] == [0, 1, 2, 3]


def test_prolong_tensor_diagonal():
    code, out, _ = run("prolong", "--n", "3", "--tensor", "--t", "0..2", "--r", "0..2", "--json", "-")
    assert code == 0
    rows = json.loads(out)["tasks"][0]["rows"]
    assert len(rows) == 9
    assert {(r["t"], r["r"]) for r in rows if r["verdict"]} == {(0, 0), (1, 1), (2, 2)}


def test_prolong_wedge2_witness():
    code, out, _ = run("prolong", "--n", "5", "--wedge2")
    assert code == 0
    assert "wedge2" in out and "false" in out and "witness wedge2: R_" in out


def test_prolong_cross_check():
    code, out, _ = run("prolong", "--n", "3", "--tensor", "--t", "0..1", "--cross-check", "--json", "-")
    rows = json.loads(out)["tasks"][0]["rows"]
    assert code == 0
    assert all(r["verdict"] == r["general"] == r["semidirect"] for r in rows)


def test_prolong_mismatch_exits_one():
    # reducible polynomial modules prolong as predicted; force a disagreement with a wrong family
    code, out, _ = run("prolong", "--n", "4", "--polynomial", "--t", "2")
    assert code == 0
    from nlie_kit import cli

    original = cli.predicted_prolongs
    cli.predicted_prolongs = lambda *a: False
    try:
        code, out, _ = run("prolong", "--n", "4", "--t", "1")
    finally:
        cli.predicted_prolongs = original
    assert code == 1 and "diff: harmonic t=1" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("prolong", "--n", "9"),
        ("prolong", "--n", "4", "--t", "0..7"),
        ("prolong", "--n", "3", "--tensor", "--r", "9"),
        ("prolong", "--n", "4", "--tensor"),
        ("prolong", "--n", "4", "--t", "3..1"),
        ("prolong", "--n", "4", "--t", "a"),
        ("prolong", "--n", "4", "--budget", "-1"),
        ("prolong",),
        ("frobnicate",),
    ],
)
def test_usage_errors_exit_two(argv):
    code, _, err = run(*argv)
    assert code == 2
    assert "Traceback" not in err


def test_budget_can_be_raised():
    code, _, _ = run("dimensions", "--n", "8", "--t", "5", "--budget", "6")
    assert code == 0


def test_module_file_round_trip(tmp_path):
    path = tmp_path / "m.json"
    code, _, _ = run("export", "--n", "3", "--family", "tensor", "--t", "1", "--r", "0", "--out", str(path))
    assert code == 0 and path.exists()
    code, out, _ = run("prolong", "--n", "3", "--module", str(path))
    assert code == 0 and "prolongs=false" in out
    code, _, err = run("prolong", "--n", "4", "--module", str(path))
    assert code == 2


def test_bad_module_file(tmp_path):
    path = tmp_path / "m.json"
    path.write_text("{\n  oops")
    code, _, err = run("prolong", "--n", "3", "--module", str(path))
    assert code == 2 and err.startswith("parse error: line 2")


# ---------------------------------------------------------------- dimensions and q2


def test_dimensions_n3():
    code, out, _ = run("dimensions", "--n", "3", "--t", "0..4", "--json", "-")
    rows = json.loads(out)["tasks"][0]["rows"]
    assert code == 0
    assert [r["formula"] for r in rows] == [1, 4, 9, 16, 25]
    assert all(r["match"] for r in rows)


def test_dimensions_n2_uses_sl2():
    code, out, _ = run("dimensions", "--n", "2", "--t", "3", "--json", "-")
    row = json.loads(out)["tasks"][0]["rows"][0]
    assert code == 0 and row["formula"] == row["model"] == 4


def test_q2():
    code, out, _ = run("q2", "--n", "4")
    assert code == 0 and "symbol span=5" in out


# ---------------------------------------------------------------- campaigns and determinism


def test_campaign(tmp_path):
    plan = {
        "tasks": [
            {"task": "verify-algebra", "vn": 3},
            {"task": "prolong-sweep", "n": 4, "t": "0..2"},
            {"task": "so4-sweep", "t": "0..1", "r": "0..1"},
            {"task": "dimensions", "n": 3, "t": "0..2"},
            {"task": "q2", "n": 3},
        ],
        "output": {"path": str(tmp_path / "out.json"), "format": "json"},
    }
    path = tmp_path / "c.json"
    path.write_text(json.dumps(plan))
    code, out, _ = run("campaign", str(path))
    assert code == 0
    doc = json.loads((tmp_path / "out.json").read_text())
    assert [t["command"] for t in doc["tasks"]] == ["verify", "prolong", "prolong", "dimensions", "q2"]
    assert doc["version"] == __version__ and doc["ok"]


@pytest.mark.parametrize("plan", ['{"tasks": [{"task": "nope"}]}', '{"tasks": [{"task": "q2"}]}', "[1, 2]", "{bad"])
def test_bad_campaign(tmp_path, plan):
    path = tmp_path / "c.json"
    path.write_text(plan)
    code, _, err = run("campaign", str(path))
    assert code == 2 and "Traceback" not in err


GOLDEN_CASES = {
    "verify_v3": ("verify", "--vn", "3"),
    "prolong_n4": ("prolong", "--n", "4", "--t", "0..2"),
    "so4_sweep": ("prolong", "--n", "3", "--tensor", "--t", "0..1", "--r", "0..1"),
    "wedge2_n5": ("prolong", "--n", "5", "--wedge2"),
    "dimensions_n3": ("dimensions", "--n", "3", "--t", "0..4"),
    "q2_n4": ("q2", "--n", "4"),
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_json(tmp_path, name):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert run(*GOLDEN_CASES[name], "--json", str(first))[0] == 0
    assert run(*GOLDEN_CASES[name], "--json", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()
    golden = GOLDEN / f"{name}.json"
    if os.environ.get("UPDATE_GOLDEN"):
        golden.write_bytes(first.read_bytes())
    assert first.read_bytes() == golden.read_bytes()


def test_timing_flag_fills_elapsed():
    code, out, _ = run("prolong", "--n", "4", "--t", "1", "--timing", "--json", "-")
    doc = json.loads(out)
    assert code == 0 and doc["tasks"][0]["rows"][0]["elapsed_ms"] is not None


def test_parse_range():
    assert parse_range("2..4") == [2, 3, 4]
    assert parse_range("3") == [3]
    assert parse_range(None, (1, 2)) == [1, 2]
    with pytest.raises(UsageError):
        parse_range("1..2..3")


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "nlie_kit", "verify", "--vn", "2"], capture_output=True, text=True, check=False
    )
    assert result.returncode == 0
    assert "iso so3: pass" in result.stdout
    assert result.stderr == ""
