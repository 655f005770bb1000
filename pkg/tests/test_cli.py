import csv
import io
import json
import math

import pytest

from asymwave.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _usage(capsys, *argv):
    with pytest.raises(SystemExit) as info:
        main(list(argv))
    capsys.readouterr()
    return info.value.code


def test_scan_whitham_kmax12(capsys):
    code, out, _ = run(capsys, "scan", "--model", "whitham-inf", "--kmax", "12", "--t", "1.0",
                       "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 45
    assert sum(1 for k2 in range(2, 13) for k1 in range(1, k2) if math.gcd(k1, k2) == 1) == 45
    assert {r["verdict"] for r in rows} == {"no-asymmetric"}


def test_scan_usage_errors(capsys):
    code, _, err = run(capsys, "scan", "--model", "whitham-inf", "--kmax", "1")
    assert code == 64 and "kmax" in err
    assert _usage(capsys, "scan", "--model", "kdv", "--kmax", "4") == 64
    assert _usage(capsys, "scan", "--model", "whitham-inf", "--kmax", "4", "--k1", "2") == 64
    assert _usage(capsys, "scan", "--model", "whitham-inf", "--kmax", "4", "--t", "-1") == 64
    code, _, _ = run(capsys, "scan", "--model", "whitham-inf", "--kmax", "4", "--g", "1")
    assert code == 64


def test_scan_babenko_finite_exploratory(capsys):
    code, out, _ = run(capsys, "scan", "--model", "babenko-finite", "--kmax", "6", "--g", "1",
                       "--kappa", "1", "--d", "1", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 11 and all(r["exploratory"] for r in rows)


def test_scan_unwritable_output(capsys, tmp_path):
    code, _, _ = run(capsys, "scan", "--model", "whitham-inf", "--kmax", "3",
                     "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 74


def test_scan_without_kernels_exits_zero(capsys):
    # T = 1 > d^2/3: the finite-depth symbol is monotone and no pair has a kernel,
    # which is a classified outcome, so the exit code stays 0
    code, out, _ = run(capsys, "scan", "--model", "whitham-fin", "--kmax", "3", "--t", "1", "--d", "1")
    assert code == 0
    assert "no-nontrivial-solutions" in out


def test_scan_inconclusive_exit(capsys, monkeypatch):
    import asymwave.cli as cli
    from asymwave.bifurcation import scan_pairs

    def degraded(*args, **kw):
        rows = scan_pairs(*args, **kw)
        rows[0].verdict = "inconclusive"
        return rows

    monkeypatch.setattr(cli, "scan_pairs", degraded)
    code, out, _ = run(capsys, "scan", "--model", "babenko-inf", "--kmax", "3")
    assert code == 2 and "inconclusive" in out


def test_report_babenko(capsys):
    code, out, _ = run(capsys, "report", "--model", "babenko-inf", "--k1", "2", "--k2", "3")
    assert code == 0
    rep = json.loads(out)
    assert rep["mu0"]["nu"] == pytest.approx(0.91287093, abs=1e-8)
    assert rep["mu0"]["beta"] == pytest.approx(0.16666667, abs=1e-8)
    assert rep["verdict"] == "no-asymmetric"
    assert rep["transversality"] == "degenerate-parameters"


def test_report_whitham(capsys):
    code, out, _ = run(capsys, "report", "--model", "whitham-inf", "--k1", "2", "--k2", "3", "--t", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["C_scaled"] is not None and rep["transversality_det"] is not None


def test_report_usage_error(capsys):
    code, _, _ = run(capsys, "report", "--model", "whitham-inf", "--k1", "3", "--k2", "3")
    assert code == 64


def test_csv_and_json_agree_to_full_precision(capsys, tmp_path):
    a, b = tmp_path / "r.csv", tmp_path / "r.json"
    for path, fmt in ((a, "csv"), (b, "json")):
        assert main(["report", "--model", "whitham-inf", "--k1", "2", "--k2", "5", "--format", fmt,
                     "--out", str(path)]) == 0
    row = next(csv.DictReader(a.open()))
    rep = json.loads(b.read_text())
    assert float(row["resonance_nhat"]) == rep["resonance_nhat"]
    assert float(row["mu0_c"]) == rep["mu0"]["c"]
    assert float(row["transversality_det"]) == rep["transversality_det"]


def test_outputs_are_reproducible(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["scan", "--model", "babenko-inf", "--kmax", "5", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


@pytest.mark.parametrize("argv", [
    ["verify", "scaling", "--k1", "2", "--k2", "3"],
    ["verify", "factorization", "--k1", "2", "--k2", "3", "--t", "1"],
    ["verify", "depth", "--k1", "2", "--k2", "3", "--d", "2"],
    ["verify", "gradient", "--model", "babenko-inf", "--seed", "4"],
    ["verify", "oracle"],
])
def test_verify_passes(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.startswith("PASS")


def test_verify_failure_names_check(capsys):
    # T = 1 >= d^2 / 3 leaves the finite-depth symbol monotone, so no kernel exists
    code, out, err = run(capsys, "verify", "depth", "--d", "1", "--t", "1")
    assert code == 1
    assert out.startswith("FAIL depth") and "depth" in err
