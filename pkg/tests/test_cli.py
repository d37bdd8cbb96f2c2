"""Command-line behaviour: exit codes, payload shapes, determinism."""

import json

import pytest

from floorlog import cli
from floorlog.cli import main, run_analyze, run_subcommand
from floorlog.jumpdigits import PeriodicityVerdict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------


def test_seq_example(capsys):
    code, out, _ = run(capsys, "seq", "--alpha", "1", "--beta", "0",
                       "--base", "2", "--from", "1", "--to", "4")
    assert code == 0
    assert out.strip() == "0,1,1,2"


def test_missing_alpha_is_usage_error(capsys):
    code, _, err = run(capsys, "rk", "--base", "2")
    assert code == 1
    assert "alpha" in err


def test_unparseable_alpha_is_usage_error(capsys):
    code, _, err = run(capsys, "rk", "--alpha", "sqrt(2)/3", "--base", "2")
    assert code == 1
    assert "alpha" in err


def test_base_below_two_is_usage_error(capsys):
    code, _, err = run(capsys, "seq", "--alpha", "1", "--base", "1")
    assert code == 1
    assert "base" in err


def test_backwards_range_is_usage_error(capsys):
    code, _, _ = run(capsys, "seq", "--alpha", "1", "--base", "2",
                     "--from", "5", "--to", "2")
    assert code == 1


def test_unknown_subcommand_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_bad_flag_value_exits_one(capsys):
    # argparse's own failures must come back as 1, not its default 2
    with pytest.raises(SystemExit) as exc:
        main(["rk", "--alpha", "1", "--base", "2", "--kmax", "ten"])
    assert exc.value.code == 1


def test_nonregular_verdict_still_exits_zero(capsys):
    code, out, _ = run(capsys, "decide", "--alpha", "sqrt(2)",
                       "--beta", "0", "--base", "2")
    assert code == 0
    assert json.loads(out)["kind"] == "NonRegular"


def test_consistency_failure_exits_two(capsys, monkeypatch):
    """A certified-periodic r for an irrational slope is a bug, not a verdict."""
    poisoned = PeriodicityVerdict.periodic(0, 2, None, certified=True)
    monkeypatch.setattr(cli, "detect_period", lambda norm, window: poisoned)
    code, _, err = run(capsys, "analyze", "--alpha", "sqrt(2)",
                       "--beta", "0", "--base", "2")
    assert code == 2
    assert "consistency" in err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0


# ---------------------------------------------------------------------------
# subcommand payloads
# ---------------------------------------------------------------------------


def test_rk_payload_matches_module(capsys):
    code, out, _ = run(capsys, "rk", "--alpha", "3/2", "--beta", "0",
                       "--base", "2", "--kmax", "10")
    assert code == 0
    records = json.loads(out)
    assert [rec["k"] for rec in records] == list(range(1, 11))
    assert [rec["r"] for rec in records] == [0, 1] * 5
    assert all(set(rec) == {"k", "r", "case", "digit", "pk", "pk1"}
               for rec in records)


def test_digits_of_unit_slope_are_all_zero(capsys):
    code, out, _ = run(capsys, "digits", "--alpha", "1", "--beta", "0",
                       "--base", "2", "--count", "6")
    assert code == 0
    assert json.loads(out)["digits"] == [0] * 6


def test_digits_three_halves(capsys):
    # 1/(3/2) = 2/3 = 0.101010... in binary
    code, out, _ = run(capsys, "digits", "--alpha", "3/2", "--beta", "0",
                       "--base", "2", "--count", "6")
    assert code == 0
    assert json.loads(out)["digits"] == [1, 0, 1, 0, 1, 0]


def test_language_periodic_source(capsys):
    code, out, _ = run(capsys, "language", "--source", "periodic",
                       "--period", "10", "--base", "2", "--nmax", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["words"] == ["1", "10", "101", "1010", "10101", "101010"]
    assert payload["length_stabilization_N"] == 0


def test_language_requires_period_for_periodic_source(capsys):
    code, _, err = run(capsys, "language", "--source", "periodic", "--base", "2")
    assert code == 1
    assert "period" in err


def test_decide_periodic_source_payload(capsys):
    code, out, _ = run(capsys, "decide", "--source", "periodic",
                       "--preperiod", "2", "--period", "10", "--base", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "Regular"
    assert payload["dfa_states"] >= 2
    assert payload["patterns"]
    first = payload["patterns"][0]
    assert set(first) == {"v0", "v1", "v2", "period", "residue", "anchor",
                          "constant"}


def test_decide_thue_morse_blocks(capsys):
    code, out, _ = run(capsys, "decide", "--source", "tm-blocks",
                       "--block-a", "10", "--block-b", "02", "--base", "3",
                       "--window", "200")
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "NonRegular"
    assert "Thue-Morse" in payload["certificate"]["reason"]


def test_dfa_dot_output(capsys):
    code, out, _ = run(capsys, "dfa", "--alpha", "3/2", "--beta", "0",
                       "--base", "2", "--dot")
    assert code == 0
    assert out.startswith("digraph")
    # start, sink, and the two live states of the (10)+ / 1(01)* shape
    assert out.count("doublecircle") == 2


def test_dfa_dot_degrades_when_nonregular(capsys):
    code, out, err = run(capsys, "dfa", "--alpha", "sqrt(2)", "--beta", "0",
                         "--base", "2", "--dot")
    assert code == 0
    assert json.loads(out)["kind"] == "NonRegular"
    assert "no DFA" in err


def test_dfa_json_includes_table(capsys):
    code, out, _ = run(capsys, "dfa", "--alpha", "3/2", "--beta", "0",
                       "--base", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "Regular"
    assert payload["dfa_states"] == 4
    assert len(payload["table"]["transitions"]) == 4


def test_kernel_subcommand(capsys):
    code, out, _ = run(capsys, "kernel", "--alpha", "1", "--beta", "0",
                       "--base", "2", "--depth", "6", "--prefix-len", "32")
    assert code == 0
    payload = json.loads(out)
    assert payload["closure"] is True
    assert payload["distinct_by_depth"][-1] == 4


def test_kernel_scope_cap(capsys):
    code, _, err = run(capsys, "kernel", "--alpha", "1", "--beta", "0",
                       "--base", "10", "--depth", "12")
    assert code == 1
    assert "scope" in err


def test_fk_subcommand(capsys):
    code, out, _ = run(capsys, "fk", "--alpha", "3/2", "--beta", "0",
                       "--base", "2", "--kmax", "30")
    assert code == 0
    payload = json.loads(out)
    assert payload["f"][0] == [0, 1]
    assert payload["alignment"]["ok"] is True
    assert payload["d_verdict"]["kind"] == "Periodic"
    assert "d" in payload


# ---------------------------------------------------------------------------
# analyze: reports, determinism, scenario files
# ---------------------------------------------------------------------------


def scrub(report):
    out = dict(report)
    out.pop("timings", None)
    return out


def test_analyze_rational_report(capsys):
    code, out, _ = run(capsys, "analyze", "--alpha", "3/2", "--beta", "0",
                       "--base", "2")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == cli.SCHEMA
    verdicts = report["verdicts"]
    assert verdicts["sequence_regularity"]["b_regular"] is True
    assert verdicts["r_periodicity"]["kind"] == "Periodic"
    assert verdicts["r_periodicity"]["mod_cycle"]["modulus"] == 3
    assert verdicts["language_regularity"]["kind"] == "Regular"
    assert verdicts["language_regularity"]["dfa_states"] == 4
    assert verdicts["d_periodicity"]["kind"] == "Periodic"


def test_analyze_irrational_report(capsys):
    code, out, _ = run(capsys, "analyze", "--alpha", "sqrt(2)", "--beta", "0",
                       "--base", "2")
    assert code == 0
    report = json.loads(out)
    verdicts = report["verdicts"]
    assert verdicts["sequence_regularity"]["b_regular"] is False
    assert verdicts["r_periodicity"]["kind"] == "AperiodicByTheorem"
    assert verdicts["language_regularity"]["kind"] == "NonRegular"


def test_analyze_output_is_canonical_json(capsys):
    """The printed report must survive a parse/re-dump round trip unchanged."""
    _, out, _ = run(capsys, "analyze", "--alpha", "3/2", "--beta", "0",
                    "--base", "2")
    text = out.rstrip("\n")
    assert json.dumps(json.loads(text), indent=2, sort_keys=True) == text


def test_analyze_is_deterministic_modulo_timings():
    scenario = {"alpha": "5/3", "beta": "1/3", "base": "3"}
    a = run_analyze(dict(scenario))
    b = run_analyze(dict(scenario))
    assert scrub(a) == scrub(b)
    assert set(a["timings"]) == set(b["timings"])


def test_analyze_report_has_scenario_echo_and_normalization():
    report = run_analyze({"alpha": "1/3", "beta": "0", "base": "2"})
    assert report["scenario"]["alpha"] == "1/3"
    assert report["normalization"]["alpha"] != "1/3"  # scaled into [1, base)
    assert report["version"]


def test_analyze_missing_alpha_is_usage_error(capsys):
    code, _, err = run(capsys, "analyze", "--base", "2")
    assert code == 1
    assert "alpha" in err


def test_scenario_file_supplies_fields(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"alpha": "3/2", "beta": "0", "base": 2}))
    code, out, _ = run(capsys, "analyze", "--scenario", str(path))
    assert code == 0
    assert json.loads(out)["scenario"]["alpha"] == "3/2"


def test_flags_beat_scenario_file(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"alpha": "3/2", "beta": "0", "base": 2}))
    code, out, _ = run(capsys, "analyze", "--scenario", str(path),
                       "--alpha", "sqrt(2)")
    assert code == 0
    report = json.loads(out)
    assert report["scenario"]["alpha"] == "sqrt(2)"
    assert report["verdicts"]["sequence_regularity"]["b_regular"] is False


def test_scenario_file_works_for_subcommands_too(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"alpha": "1", "beta": "0", "base": 2}))
    code, out, _ = run(capsys, "seq", "--scenario", str(path),
                       "--from", "1", "--to", "4")
    assert code == 0
    assert out.strip() == "0,1,1,2"


def test_scenario_file_must_be_an_object(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text("[1, 2]")
    code, _, err = run(capsys, "analyze", "--scenario", str(path))
    assert code == 1
    assert "object" in err


def test_batch_runs_all_scenarios(tmp_path, capsys):
    path = tmp_path / "batch.json"
    path.write_text(json.dumps([
        {"alpha": "3/2", "beta": "0", "base": 2},
        {"alpha": "sqrt(2)", "beta": "0", "base": 2},
    ]))
    code, out, _ = run(capsys, "analyze", "--batch", str(path))
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == 2
    assert reports[0]["verdicts"]["sequence_regularity"]["b_regular"] is True
    assert reports[1]["verdicts"]["sequence_regularity"]["b_regular"] is False


def test_batch_file_must_be_a_list(tmp_path, capsys):
    path = tmp_path / "batch.json"
    path.write_text(json.dumps({"alpha": "3/2"}))
    code, _, err = run(capsys, "analyze", "--batch", str(path))
    assert code == 1
    assert "array" in err


def test_run_subcommand_is_main(capsys):
    assert run_subcommand("seq", ["--alpha", "1", "--base", "2",
                                  "--from", "1", "--to", "4"]) == 0
    assert capsys.readouterr().out.strip() == "0,1,1,2"
