import io
import json
import shutil
import subprocess
import sys

import pytest

from quandle_hilbert.cli import run
from quandle_hilbert.quandle import dumps, load, trivial


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def bad_table(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"size": 2, "table": [[1, 0], [1, 0]]}))
    return str(path)


class TestExitCodes:
    def test_validate_ok(self):
        code, out, _ = call("validate", "catalog:D3")
        assert code == 0 and json.loads(out) == {"valid": True, "name": "D3", "size": 3}

    def test_axiom_violation(self, bad_table):
        code, out, _ = call("validate", bad_table)
        body = json.loads(out)
        assert code == 1
        assert body["error"] == "AxiomViolation" and body["axiom"] == "Q1"

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "x.json"
        path.write_text("{not json")
        assert call("validate", str(path))[0] == 1

    def test_missing_file(self, tmp_path):
        code, _, err = call("validate", str(tmp_path / "nope.json"))
        assert code == 3 and "cannot read" in err

    def test_unknown_catalog_name(self):
        code, out, _ = call("validate", "catalog:D9")
        assert code == 1 and json.loads(out)["error"] == "UnknownName"

    def test_budget(self):
        code, out, _ = call("series", "catalog:D3", "--max-degree", "6", "--budget", "10")
        assert code == 0 and json.loads(out)["truncated"] is True
        code, out, _ = call("color", "catalog:D3", "--strands", "6", "--budget", "100")
        assert code == 2 and json.loads(out)["error"] == "BudgetExceeded"

    def test_usage(self):
        assert call()[0] == 3
        assert call("bogus")[0] == 3
        assert call("series", "catalog:D3")[0] == 3
        assert call("series", "catalog:D3", "--max-degree", "3", "--unknown")[0] == 3
        assert call("table", "--format", "csv")[0] == 3

    def test_help(self):
        assert call("--help")[0] == 0


class TestCommands:
    def test_color_trefoil(self):
        assert call("color", "catalog:D3", "--strands", "2", "--word", "1 1 1")[1] == "9\n"
        assert call("color", "catalog:D3", "--strands", "2", "--word", "1 1 1", "--dominant")[1] == "6\n"

    def test_color_json(self):
        code, out, _ = call("color", "catalog:J", "--strands", "3", "--format", "json")
        assert code == 0 and json.loads(out)["count"] == "27"

    def test_global_flags_before_command(self):
        assert call("--format", "json", "color", "catalog:T2", "--strands", "2")[0] == 0

    def test_series_csv(self):
        code, out, _ = call("series", "catalog:D3", "--max-degree", "4", "--format", "csv")
        assert code == 0
        assert out == "n,value\n0,1\n1,3\n2,5\n3,6\n4,6\n"

    def test_series_json_strings(self):
        body = json.loads(call("series", "catalog:J", "--max-degree", "5", "--dominant")[1])
        assert body["values"] == ["0", "0", "1", "2", "3", "4"]

    def test_hilbert(self):
        code, out, _ = call("hilbert", "catalog:D4", "--max-degree", "8")
        body = json.loads(out)
        assert code == 0
        assert body["poly_monomial_over_denominator"] == {"num": ["0", "4"], "den": "1"}
        assert body["threshold"] == 0
        assert body["certificate"]["n0"] == 1 and body["certificate"]["dim_check"] is True

    def test_hilbert_degree_mismatch(self):
        code, out, _ = call("hilbert", "catalog:D4", "--max-degree", "8", "--expected-degree", "0")
        assert code == 1 and json.loads(out)["error"] == "DegreeMismatch"

    def test_genfunc(self):
        body = json.loads(call("genfunc", "catalog:D3", "--max-degree", "8")[1])
        assert body["numerator"] == ["1", "2", "2", "1"] and body["den_power"] == 1

    def test_invariants(self):
        body = json.loads(call("invariants", "catalog:J")[1])
        assert body["pi0"] == [[0, 1], [2]] and body["dim"] == 2 and body["inn_order"] == "2"
        body = json.loads(call("invariants", "catalog:empty")[1])
        assert body["exp"] is None

    def test_avg(self):
        body = json.loads(call("avg", "catalog:D3", "--strands", "2", "--exact")[1])
        assert body == {"group_order": "3", "average_fixed_points": "5", "orbit_count": "5", "equal": True}
        body = json.loads(call("avg", "catalog:D3", "--strands", "3", "--samples", "50", "--seed", "4")[1])
        assert body["samples"] == "50" and body["seed"] == "4"

    def test_moments(self):
        body = json.loads(call("moments", "catalog:T2", "--strands", "2")[1])
        assert body["moment"] == "10" and body["variance"] == "1"
        body = json.loads(call("moments", "catalog:T2", "--strands", "2", "--with", "catalog:T1")[1])
        assert body["covariance"] == "0"

    def test_table_markdown(self):
        code, out, _ = call("table")
        assert code == 0
        lines = out.splitlines()
        assert sum(1 for l in lines if l.startswith("| ") and not l.startswith("| size")) == 12
        assert "C3 eta" in out and "D3_plus P_dom" in out

    def test_enumerate_out(self, tmp_path):
        code, out, _ = call("enumerate", "--order", "3", "--out", str(tmp_path / "classes"))
        body = json.loads(out)
        assert code == 0 and body["classes"] == 3
        files = sorted((tmp_path / "classes").glob("*.json"))
        assert len(files) == 3
        assert sorted(m["matches"] for m in body["quandles"]) == ["D3", "J", "T3"]
        assert all(load(f).size == 3 for f in files)

    def test_file_input(self, tmp_path):
        path = tmp_path / "t3.json"
        path.write_text(dumps(trivial(3)))
        assert call("series", str(path), "--max-degree", "3", "--format", "csv")[1].endswith("3,10\n")


@pytest.mark.parametrize(
    "argv",
    [
        ("table", "--format", "json"),
        ("series", "catalog:C3", "--max-degree", "6"),
        ("avg", "catalog:J", "--strands", "3", "--samples", "100", "--seed", "9"),
        ("enumerate", "--order", "4"),
    ],
)
def test_byte_stable(argv):
    assert call(*argv) == call(*argv)


def test_console_script():
    exe = shutil.which("quandle-hilbert")
    cmd = [exe] if exe else [sys.executable, "-m", "quandle_hilbert.cli"]
    done = subprocess.run(cmd + ["color", "catalog:D3", "--strands", "2", "--word", "1 1 1"], capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout == "9\n"
