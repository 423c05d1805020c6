"""Command-line interface: outputs, error records, determinism."""

from __future__ import annotations

import io
import json
import math
import os

import pytest

from fraccpp import cli, dist


def _run(argv):
    err = io.StringIO()
    code = cli.run(argv, stderr=err)
    return code, err.getvalue()


def _error_record(text):
    rec = json.loads(text.strip().splitlines()[-1])
    assert rec["schema_version"] == 1
    return rec["error"]


# ---------------------------------------------------------------------------
# rate parsing


def test_load_rates_inline():
    r = cli.load_rates("0.5, 0.25")
    assert r.lam == (0.5, 0.25)
    assert r.delta == pytest.approx(0.75)


def test_load_rates_json_file(tmp_path):
    f = tmp_path / "rates.json"
    f.write_text("[0.2, 0.3, 0.5]")
    assert cli.load_rates(str(f)).lam == (0.2, 0.3, 0.5)


def test_load_rates_line_file_with_comments(tmp_path):
    f = tmp_path / "rates.txt"
    f.write_text("# claim sizes\n0.4\n\n  0.1  # second\n")
    assert cli.load_rates(str(f)).lam == (0.4, 0.1)


def test_load_rates_reports_line_and_column(tmp_path):
    f = tmp_path / "rates.txt"
    f.write_text("0.4\n  abc\n")
    with pytest.raises(cli.ConfigError) as info:
        cli.load_rates(str(f))
    assert (info.value.line, info.value.column) == (2, 3)


def test_load_rates_negative_inline_column():
    with pytest.raises(cli.ConfigError) as info:
        cli.load_rates("0.5,-1")
    assert (info.value.line, info.value.column) == (1, 5)


def test_load_rates_json_error_location(tmp_path):
    f = tmp_path / "rates.json"
    f.write_text("[0.1,\n 0.2,,]")
    with pytest.raises(cli.ConfigError) as info:
        cli.load_rates(str(f))
    assert info.value.line == 2


@pytest.mark.parametrize("bad", ["0,0", "", "1,,2", "nan", "inf"])
def test_load_rates_rejects(bad):
    with pytest.raises(cli.ConfigError):
        cli.load_rates(bad)


# ---------------------------------------------------------------------------
# subcommand outputs


def test_pmf_csv_matches_library(tmp_path):
    out = tmp_path / "pmf.csv"
    code, _ = _run(["pmf", "--rates", "0.5,0.5", "--t", "1", "--beta", "0.7", "--nmax", "8",
                    "-o", str(out)])
    assert code == 0
    rows = cli.read_output(str(out))
    assert [int(r["n"]) for r in rows] == list(range(9))
    for r in rows:
        expect = dist.tfcpp_pmf((0.5, 0.5), 1.0, 0.7, int(r["n"]))
        assert float(r["prob"]) == pytest.approx(expect, rel=1e-12, abs=1e-300)


def test_pmf_json_default_cutoff(tmp_path):
    out = tmp_path / "pmf.json"
    code, _ = _run(["pmf", "--process", "cpp", "--rates", "1,0.5", "--t", "2",
                    "--format", "json", "-o", str(out)])
    assert code == 0
    rec = cli.read_output(str(out))
    assert rec["schema_version"] == 1 and rec["kind"] == "pmf"
    assert rec["tail_bound"] < 1e-8
    assert math.fsum(rec["probs"]) == pytest.approx(1.0, abs=1e-8)


def test_pmf_order_k(tmp_path):
    out = tmp_path / "ok.csv"
    code, _ = _run(["pmf", "--process", "order-k", "--order", "2", "--rates", "0.3,0.3,0.9",
                    "--nmax", "6", "-o", str(out)])
    assert code == 0
    probs = [float(r["prob"]) for r in cli.read_output(str(out))]
    assert probs[0] == pytest.approx(math.exp(-0.6), rel=1e-14)


def test_bell_exact_value(tmp_path):
    out = tmp_path / "b.json"
    code, _ = _run(["bell", "--n", "3", "--u", "1,4,3", "-o", str(out)])
    assert code == 0
    rec = cli.read_output(str(out))
    # B_3(u1,u2,u3) = u1^3 + 3 u1 u2 + u3
    assert rec["exact"] == "16" and rec["value"] == 16.0


def test_bell_partial_fraction_args(tmp_path):
    out = tmp_path / "b.json"
    code, _ = _run(["bell", "--n", "4", "--k", "2", "--u", "1/2,1/3,1/4,7", "-o", str(out)])
    assert code == 0
    # B_{4,2} = 4 u1 u3 + 3 u2^2
    assert cli.read_output(str(out))["exact"] == "5/6"


def test_moments_json(tmp_path):
    out = tmp_path / "m.json"
    code, _ = _run(["moments", "--rates", "0.5,0.5", "--beta", "1", "--t", "2", "--s", "1",
                    "-o", str(out)])
    assert code == 0
    rec = cli.read_output(str(out))
    assert rec["schema_version"] == 1
    # classical compound Poisson: mean = t sum j lam_j, var = t sum j^2 lam_j
    assert rec["mean"] == pytest.approx(3.0, rel=1e-14)
    assert rec["variance"] == pytest.approx(5.0, rel=1e-14)
    assert rec["correlation"] == pytest.approx(math.sqrt(0.5), rel=1e-13)


def test_lrd_analytic_json(tmp_path):
    out = tmp_path / "lrd.json"
    code, _ = _run(["lrd", "--process", "cpp", "--rates", "1", "--beta", "1", "-o", str(out)])
    assert code == 0
    rec = cli.read_output(str(out))
    assert rec["schema_version"] == 1 and rec["kind"] == "lrd_fit"
    assert len(rec["t_grid"]) == 9


def test_verify_fde_json(tmp_path):
    out = tmp_path / "fde.json"
    code, _ = _run(["verify-fde", "--beta", "0.5", "--nmax", "2", "--steps", "0.0625,0.03125",
                    "-o", str(out)])
    assert code == 0
    rec = cli.read_output(str(out))
    assert rec["kind"] == "fde_residuals"
    assert {r["n"] for r in rec["rows"]} == {0, 1, 2}


def test_simulate_csv_paths_are_nondecreasing(tmp_path):
    out = tmp_path / "s.csv"
    code, _ = _run(["simulate", "--rates", "0.5,0.5", "--beta", "0.7", "--T", "5", "--paths", "4",
                    "-o", str(out)])
    assert code == 0
    rows = cli.read_output(str(out))
    for i in range(4):
        vals = [int(r["value"]) for r in rows if int(r["path"]) == i]
        assert vals[0] == 0 and vals == sorted(vals)


def test_risk_writes_summary_sidecar(tmp_path):
    out = tmp_path / "risk.csv"
    code, _ = _run(["risk", "--rates", "0.5,0.5", "--beta", "0.8", "--c", "1", "--T", "3",
                    "--paths", "50", "--ntimes", "5", "-o", str(out)])
    assert code == 0
    side = tmp_path / "risk.summary.json"
    assert side.exists()
    summary = json.loads(side.read_text())
    assert summary["schema_version"] == 1
    assert len(summary["closed_form"]["times"]) == 5
    assert summary["closed_form"]["mean"][0] == pytest.approx(0.0, abs=1e-15)


def test_selftest_passes():
    code, err = _run(["selftest", "-o", os.devnull])
    assert code == 0, err


def test_output_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "outdir"))
    code, _ = _run(["bell", "--n", "2", "--u", "1,1"])
    assert code == 0
    assert (tmp_path / "outdir" / "bell.json").exists()


def test_stdout_when_no_destination(monkeypatch, capsys):
    monkeypatch.delenv(cli.OUTPUT_DIR_ENV, raising=False)
    assert cli.run(["bell", "--n", "2", "--u", "2,3"]) == 0
    assert json.loads(capsys.readouterr().out)["exact"] == "7"


# ---------------------------------------------------------------------------
# errors


def test_config_error_carries_location():
    code, err = _run(["pmf", "--rates", "0.5,x", "--nmax", "3", "-o", os.devnull])
    assert code == 2
    rec = _error_record(err)
    assert rec["code"] == 2 and rec["line"] == 1 and rec["column"] == 5


def test_bad_argument_is_config_error():
    code, err = _run(["pmf", "--rates", "1", "--nmax", "three"])
    assert code == 2
    assert _error_record(err)["type"] == "ConfigError"


def test_unknown_subcommand():
    code, _ = _run(["plot"])
    assert code == 2


def test_negative_workers_rejected():
    code, _ = _run(["simulate", "--rates", "1", "--T", "1", "--workers", "0"])
    assert code == 2


def test_unwritable_output_is_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, err = _run(["bell", "--n", "2", "--u", "1,1", "-o", str(blocker / "sub" / "x.json")])
    assert code == 4
    assert _error_record(err)["code"] == 4


def test_missing_rate_file_treated_as_inline():
    code, err = _run(["pmf", "--rates", "no/such/file.txt", "--nmax", "2", "-o", os.devnull])
    assert code == 2
    assert "not a number" in _error_record(err)["message"]


# ---------------------------------------------------------------------------
# determinism


def test_simulate_byte_identical_and_worker_independent(tmp_path):
    base = ["simulate", "--rates", "0.3,0.2,0.1", "--beta", "0.6", "--T", "10", "--paths", "12",
            "--seed", "7"]
    outs = []
    for tag, workers in [("a", "1"), ("b", "1"), ("c", "4")]:
        path = tmp_path / f"{tag}.csv"
        assert _run(base + ["--workers", workers, "-o", str(path)])[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_different_seed_changes_output(tmp_path):
    base = ["simulate", "--rates", "1", "--T", "10", "--paths", "3"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    _run(base + ["--seed", "1", "-o", str(a)])
    _run(base + ["--seed", "2", "-o", str(b)])
    assert a.read_bytes() != b.read_bytes()


def test_lrd_mc_too_few_replications_is_numeric_error():
    code, err = _run(["lrd", "--rates", "2.5,2.5", "--beta", "0.7", "--method", "mc", "--tmin", "10",
                      "--tmax", "100", "--npoints", "4", "--reps", "20", "--seed", "5", "-o", os.devnull])
    assert code == 3
    assert _error_record(err)["type"] == "ArithmeticError"
