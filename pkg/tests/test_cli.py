import csv
import io
import json

import pytest

from shiftyang.cli import SuiteReport, UsageError, emit_report, main, run_suite


def run(argv):
    buf = io.BytesIO()
    code = main(argv, buf)
    return code, buf.getvalue().decode()


def sample_report():
    r = SuiteReport("toda", {"n": 1}, seed=3)
    r.add({"name": "a", "status": "pass", "witness": ""})
    r.add({"name": "b", "status": "fail", "witness": "x" * 300})
    return r


def test_json_round_trip():
    r = sample_report()
    data = json.loads(emit_report(r, "json"))
    assert data == r.to_dict()
    assert list(data) == ["suite", "params", "checks", "version", "seed"]
    assert list(data["checks"][0]) == ["name", "status", "witness", "ms"]


def test_table_truncates():
    lines = emit_report(sample_report(), "table").decode().splitlines()
    assert all(len(line) <= 120 for line in lines)
    assert lines[-1].endswith("...")


def test_csv_one_row_per_check():
    rows = list(csv.reader(io.StringIO(emit_report(sample_report(), "csv").decode())))
    assert len(rows) == 1 + 2


def test_unknown_suite():
    with pytest.raises(UsageError):
        run_suite("unknown")
    code, _ = run(["verify", "unknown"])
    assert code == 64


def test_toda_suite_passes():
    code, out = run(["verify", "toda", "--n", "3", "--jobs", "1"])
    assert code == 0
    assert all(c["status"] == "pass" for c in json.loads(out)["checks"])


def test_coassoc_expected_counterexample():
    code, out = run(["verify", "coassoc", "--shifts", "0,2,0", "--jobs", "1"])
    data = json.loads(out)
    assert code == 0
    assert any(c["status"] == "fail" and c["witness"] for c in data["checks"])


def test_reports_are_byte_identical():
    a = run(["verify", "zastava", "--samples", "10", "--seed", "5"])
    b = run(["verify", "zastava", "--samples", "10", "--seed", "5"])
    assert a == b


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 1\nformat = csv\n")
    code, out = run(["verify", "rmatrix", "--config", str(cfg)])
    assert code == 0 and out.startswith("name,status")
    code, out = run(["verify", "rmatrix", "--config", str(cfg), "--format", "json"])
    assert json.loads(out)["params"]["n"] == 1


def test_nf_command():
    assert run(["nf", "--shift", "0", "F[1,1]*E[1,1]"]) == (0, "-hbar*H[1,1] + E[1,1]*F[1,1]\n")
    assert run(["nf", "--shift", "-2", "--mode", "hbar1", "F[1,1]*E[1,1]"]) == (0, "E[1,1]*F[1,1]\n")


def test_nf_symbols():
    code, out = run(["nf", "--symbols", "a", "a*F[1,1]*E[1,1]"])
    assert code == 0 and "a" in out


def test_delta_command():
    code, out = run(["delta", "--mu1", "0", "--mu2", "0", "E[1,1]"])
    assert out == "ox(1, E[1,1]) + ox(E[1,1], 1)\n"


def test_zastava_commands():
    code, out = run(["zastava", "psi", "--q", "z**2-1", "--r", "z"])
    assert json.loads(out) == {"Q": "z**2 - 1", "R'": "-z", "R": "z", "Q'": "-1"}
    code, out = run(["zastava", "mul", "--q", "z", "--r", "1", "--q2", "z", "--r2", "1"])
    assert json.loads(out) == {"Q": "z**2 - 1", "R": "z"}
    code, out = run(["zastava", "inv", "--q", "z**2-1", "--r", "z"])
    assert json.loads(out) == {"Q": "z**2 - 1", "R": "-z"}


def test_relations_command():
    code, out = run(["relations", "--shift", "0", "--bound", "2"])
    data = json.loads(out)
    assert code == 0 and {r["family"] for r in data["relations"]} >= {"EF", "HE", "HF", "EE", "FF"}


def test_toda_hams_command():
    code, out = run(["toda", "hams", "--n", "2"])
    assert json.loads(out)["hamiltonians"][0] == "-w1 - w2"


def test_malformed_parameters():
    code, _ = run(["verify", "coassoc", "--shifts", "0,x,0"])
    assert code == 64
