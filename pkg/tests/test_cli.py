"""CLI contract: record shapes, grid parsing, exit codes, format
parity, and byte-identical reruns under --no-timestamp."""

import csv
import io
import json
import math

import pytest

from mapbounds import bounds
from mapbounds.cli import ENV_DIGIT_CAP, main, parse_grid


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_grid():
    assert parse_grid("0:1:lin:3") == [0.0, 0.5, 1.0]
    assert parse_grid("1:100:log:3") == pytest.approx([1.0, 10.0, 100.0])
    assert parse_grid("5:5:lin:1") == [5.0]
    assert len(parse_grid("2:1000000:log")) == 25
    # integer grids round and deduplicate but keep the endpoints
    gs = parse_grid("2:1000000:log", integer=True)
    assert gs[0] == 2 and gs[-1] == 1000000
    assert gs == sorted(set(gs))
    assert parse_grid("2:4:lin:5", integer=True) == [2, 3, 4]

    for bad in ("1:2", "1:2:cubic", "a:2:lin", "1:2:lin:0", "1:2:lin:x",
                "3:2:lin", "0:2:log", "1:2:lin:3:4"):
        with pytest.raises(ValueError):
            parse_grid(bad)


def test_bound_record(capsys):
    code, out, _ = run_cli(capsys, "bound", "--g", "2", "--L", "0",
                           "--no-timestamp")
    assert code == 0
    rec = json.loads(out)
    assert rec["command"] == "bound"
    assert rec["V0"] == 5090
    assert rec["gGamma0"] == 15400
    assert rec["deg0"] == 2
    assert rec["r_disk"] == "inf"
    assert rec["crit_count_ln"] == 273447.922938653
    exact = rec["crit_count_exact"]
    assert isinstance(exact, int)
    assert exact == bounds.crit_count_bound(bounds.BoundParams(2, 0.0)).exact_value
    assert "timestamp" not in rec

    # ln values round-trip through exactly 15 significant digits
    assert rec["crit_count_ln"] == float(f"{273447.92293865313:.15g}")


def test_bound_real_mode_and_overflow(capsys):
    code, out, _ = run_cli(capsys, "bound", "--g", "2", "--L", "0",
                           "--rounding", "real", "--no-timestamp")
    assert code == 0
    rec = json.loads(out)
    assert rec["crit_count_exact"] is None

    code, out, _ = run_cli(capsys, "bound", "--g", "50", "--L", "10",
                           "--digit-cap", "1000", "--no-timestamp")
    assert code == 0
    rec = json.loads(out)
    assert rec["crit_count_exact"]["overflow"] is True
    assert rec["crit_count_exact"]["ln"] == rec["crit_count_ln"]


def test_sweep_rows(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--g-grid", "2:10:lin:3",
                           "--L-grid", "0:1:lin:2", "--no-timestamp")
    assert code == 0
    rec = json.loads(out)
    assert rec["points"] == 6
    gs = sorted({row["g"] for row in rec["rows"]})
    assert gs == [2, 6, 10]
    for row in rec["rows"]:
        assert row["crit_count_ln"] > 0

    # without --L-grid each genus is swept at its own systole maximum
    code, out, _ = run_cli(capsys, "sweep", "--g-grid", "2:4:lin:2",
                           "--no-timestamp")
    rec = json.loads(out)
    assert rec["points"] == 2
    for row in rec["rows"]:
        assert row["L"] == pytest.approx(math.log(2 * row["g"] ** 2), rel=1e-14)


def test_verify_chain_point_and_strict(capsys):
    code, out, _ = run_cli(capsys, "verify-chain", "--g", "2", "--L", "0.2",
                           "--no-timestamp")
    assert code == 0
    rec = json.loads(out)
    assert rec["sweep"] is False
    assert rec["all_hold"] is False
    by_id = {k["inequality_id"]: k for k in rec["links"]}
    assert by_id["degree_factorial_vs_power"]["holds"] is False
    assert "4.77073" in by_id["degree_factorial_vs_power"]["description"]

    code, _, _ = run_cli(capsys, "verify-chain", "--g", "2", "--L", "0.2",
                         "--strict", "--no-timestamp")
    assert code == 2

    code, out, _ = run_cli(capsys, "verify-chain", "--g", "20000", "--L", "1",
                           "--strict", "--no-timestamp")
    assert code == 0
    assert json.loads(out)["all_hold"] is True


def test_verify_chain_sweep_onsets(capsys):
    code, out, _ = run_cli(capsys, "verify-chain", "--g-grid",
                           "2:1000000:log", "--no-timestamp")
    assert code == 0
    rec = json.loads(out)
    assert rec["sweep"] is True
    assert rec["onsets"]["combined_vs_genus_power_bound"] == 12599
    assert rec["onsets"]["catalan_vs_power_of_four"] == 2
    assert len(rec["rows"]) == 25 * 7


def test_census_record(capsys):
    code, out, _ = run_cli(capsys, "census", "--genus", "1", "--max-edges",
                           "2", "--no-timestamp")
    assert code == 0
    rec = json.loads(out)
    assert rec["budget"] == {"genus_target": 1, "max_vertices": 3,
                             "max_edges": 2, "max_degree": 4,
                             "work_cap": 1000000}
    assert rec["sequences_counted"] == 16
    assert rec["iso_classes"] == 7
    assert rec["filling_classes"] == 1
    assert rec["truncated"] is False
    assert rec["wall_time_seconds"] == 0
    assert "maps" not in rec


def test_census_dump_maps_and_workers(capsys):
    code, out, _ = run_cli(capsys, "census", "--genus", "1", "--max-edges",
                           "2", "--dump-maps", "--no-timestamp")
    rec1 = json.loads(out)
    assert rec1["maps"] == ["2;(0 2 1 3);(0 1)(2 3)"]

    code, out, _ = run_cli(capsys, "census", "--genus", "1", "--max-edges",
                           "2", "--dump-maps", "--workers", "2",
                           "--no-timestamp")
    rec2 = json.loads(out)
    assert rec2["maps"] == rec1["maps"]
    for key in ("sequences_counted", "iso_classes", "filling_classes"):
        assert rec2[key] == rec1[key]


def test_euler_char_record(capsys):
    code, out, _ = run_cli(capsys, "euler-char", "--g", "2", "--no-timestamp")
    assert code == 0
    rec = json.loads(out)
    assert rec["chi"] == "-1/240"
    assert rec["negative"] is True
    assert rec["chi_ln_abs"] == pytest.approx(-math.log(240), rel=1e-12)

    code, out, _ = run_cli(capsys, "euler-char", "--g", "3", "--no-timestamp")
    rec = json.loads(out)
    assert rec["chi"] == "1/1008"
    assert rec["negative"] is False


def test_gap_record(capsys):
    code, out, _ = run_cli(capsys, "gap", "--g-grid", "2:1000000:log:5",
                           "--strict", "--no-timestamp")
    assert code == 0
    rec = json.loads(out)
    assert rec["all_hold"] is True
    assert rec["beta_prime_ln"] == 27.2
    assert rec["exponent_cap"] == 400000000
    assert len(rec["rows"]) == 5
    for row in rec["rows"]:
        assert row["quotient"] <= 4e8


def test_csv_and_json_cells_match(capsys):
    args = ("sweep", "--g-grid", "2:100:log:4", "--L-grid", "0:2:lin:3",
            "--no-timestamp")
    _, out_json, _ = run_cli(capsys, *args)
    _, out_csv, _ = run_cli(capsys, *args, "--format", "csv")
    rows_json = json.loads(out_json)["rows"]
    rows_csv = list(csv.DictReader(io.StringIO(out_csv)))
    assert len(rows_csv) == len(rows_json) == 12
    for rj, rc in zip(rows_json, rows_csv):
        assert set(rc) == set(rj)
        for key, val in rj.items():
            if isinstance(val, str):
                assert rc[key] == val
            else:
                assert float(rc[key]) == pytest.approx(float(val), rel=1e-14)


def test_reruns_are_byte_identical(capsys):
    cases = [
        ("bound", "--g", "3", "--L", "0.5", "--no-timestamp"),
        ("sweep", "--g-grid", "2:50:log:5", "--no-timestamp"),
        ("verify-chain", "--g-grid", "2:100:log:5", "--no-timestamp"),
        ("census", "--genus", "1", "--max-edges", "3", "--no-timestamp"),
        ("census", "--genus", "1", "--max-edges", "3", "--workers", "2",
         "--no-timestamp"),
        ("euler-char", "--g", "7", "--no-timestamp"),
        ("gap", "--g-grid", "2:1000:log:4", "--no-timestamp"),
    ]
    for args in cases:
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second, args


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run_cli(capsys, "euler-char", "--g", "2", "--no-timestamp",
                           "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["chi"] == "-1/240"


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["bound", "--g", "2"])  # missing --L
    assert ei.value.code == 1
    with pytest.raises(SystemExit) as ei:
        main(["no-such-command"])
    assert ei.value.code == 1
    with pytest.raises(SystemExit) as ei:
        main(["bound", "--g", "2", "--L", "0", "--digit-cap", "10"])
    assert ei.value.code == 1

    # domain errors are reported on stderr with exit 1, not tracebacks
    code, out, err = run_cli(capsys, "sweep", "--g-grid", "2:5:cubic")
    assert code == 1 and "cubic" in err
    code, out, err = run_cli(capsys, "bound", "--g", "1", "--L", "0")
    assert code == 1 and "genus" in err
    code, out, err = run_cli(capsys, "census", "--genus", "-1",
                             "--max-edges", "2")
    assert code == 1


def test_env_digit_cap(capsys, monkeypatch):
    monkeypatch.setenv(ENV_DIGIT_CAP, "12")
    with pytest.raises(SystemExit) as ei:
        main(["bound", "--g", "2", "--L", "0", "--no-timestamp"])
    assert ei.value.code == 1

    monkeypatch.setenv(ENV_DIGIT_CAP, "2000")
    code, out, _ = run_cli(capsys, "bound", "--g", "2", "--L", "0",
                           "--no-timestamp")
    assert code == 0
    assert json.loads(out)["crit_count_exact"]["overflow"] is True

    # explicit flag beats the environment
    monkeypatch.setenv(ENV_DIGIT_CAP, "2000")
    code, out, _ = run_cli(capsys, "bound", "--g", "2", "--L", "0",
                           "--digit-cap", "200000", "--no-timestamp")
    assert code == 0
    assert isinstance(json.loads(out)["crit_count_exact"], int)

    monkeypatch.setenv(ENV_DIGIT_CAP, "notanint")
    with pytest.raises(SystemExit) as ei:
        main(["bound", "--g", "2", "--L", "0", "--no-timestamp"])
    assert ei.value.code == 1


def test_timestamp_present_by_default(capsys):
    code, out, _ = run_cli(capsys, "euler-char", "--g", "2")
    rec = json.loads(out)
    assert "timestamp" in rec and rec["timestamp"].endswith("+00:00")
