"""CLI harness: config validation, report schema, determinism, exit codes."""

import json
from itertools import product

import pytest

from sympspin.cli import (
    EXPECTED_DISPLAYS,
    RunConfig,
    SUITE_ORDER,
    emit_report,
    main,
    parse_report,
    run_suite,
    validate_config,
)

FAST = dict(l=2, max_degree=3, trials=2, seed=7)


def fast_config(**kw):
    merged = {**FAST, **kw}
    return RunConfig(**merged)


# ---------------------------------------------------------------------------
# Config validation
# ---------------------------------------------------------------------------


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        validate_config(RunConfig(suites=("nonsense",)))


def test_l1_rejected_for_spinor_suites():
    with pytest.raises(ValueError):
        validate_config(RunConfig(l=1, suites=("theorem9",)))
    # curvature-only suites are fine at l = 1
    assert validate_config(RunConfig(l=1, suites=("lemma6",))) == ["lemma6"]


def test_insufficient_pad_rejected():
    with pytest.raises(ValueError):
        validate_config(RunConfig(pad=2, suites=("theorem9",)))
    # pad only gates the theorem suites
    assert validate_config(RunConfig(pad=2, suites=("lemma1",))) == ["lemma1"]


def test_all_expands_in_canonical_order():
    assert validate_config(RunConfig()) == list(SUITE_ORDER)


# ---------------------------------------------------------------------------
# run_suite
# ---------------------------------------------------------------------------


def test_single_suite_filtering():
    report = run_suite(fast_config(suites=("lemma1",)))
    assert [c.name for c in report.checks] == ["lemma1"]
    assert report.overall == "pass"


def test_empty_suite_list_gives_valid_empty_report():
    report = run_suite(fast_config(suites=()))
    assert report.checks == ()
    assert report.overall == "fail"      # nothing ran, so nothing passed
    parsed = json.loads(emit_report(report, "json"))
    assert parsed["checks"] == []


def test_skipped_records_never_pass():
    report = run_suite(fast_config(trials=0, suites=("lemma1", "lemma4")))
    assert all(c.status == "skipped" for c in report.checks)
    assert report.overall == "fail"


def test_run_suite_deterministic_up_to_elapsed():
    cfg = fast_config(suites=("lemma1", "lemma5", "symbol-complex"))
    a = run_suite(cfg)
    b = run_suite(cfg)

    def normalized(rep):
        out = rep.to_json()
        for c in out["checks"]:
            c["elapsed_ms"] = 0
        return json.dumps(out, sort_keys=True)

    assert normalized(a) == normalized(b)


def test_theorem_suite_emits_display_records():
    report = run_suite(fast_config(suites=("theorem9",), max_degree=3, pad=6))
    names = [c.name for c in report.checks]
    assert names == ["theorem9", "theorem9.eq9-display", "theorem9.eq10-display"]
    assert report.overall == "pass"
    for c in report.checks[1:]:
        assert c.counterexample["literal_match"] is False
        assert c.counterexample["corrected_match"] is True
        assert c.status == "pass"


def test_display_expectation_table_is_exhaustive():
    suites = {s for s, _ in EXPECTED_DISPLAYS}
    assert suites == {"theorem9", "theorem10", "corollary11"}


# ---------------------------------------------------------------------------
# Report schema and round trip
# ---------------------------------------------------------------------------


def test_json_schema_keys_exact():
    report = run_suite(fast_config(suites=("lemma1",)))
    obj = json.loads(emit_report(report, "json"))
    assert list(obj.keys()) == ["config", "checks", "overall"]
    assert list(obj["config"].keys()) == [
        "l", "max_degree", "pad", "trials", "seed", "suites", "out", "format",
    ]
    for c in obj["checks"]:
        assert list(c.keys()) == [
            "name", "paper_anchor", "status", "trials_run", "elapsed_ms",
            "counterexample",
        ]
    assert obj["overall"] in ("pass", "fail")


def test_report_round_trip():
    report = run_suite(fast_config(suites=("lemma1", "lemma6")))
    data = emit_report(report, "json")
    assert parse_report(data) == report


def test_text_format_lines_end_with_status():
    report = run_suite(fast_config(suites=("lemma1",)))
    text = emit_report(report, "text").decode()
    lines = [ln for ln in text.splitlines() if ln.startswith("lemma1")]
    assert lines and all(ln.endswith("PASS") for ln in lines)
    assert text.splitlines()[-1] == "overall: PASS"


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _fast_argv(*extra):
    return [
        "--l", "2", "--max-degree", "3", "--trials", "2", "--seed", "7",
        "--suite", "lemma1", *extra,
    ]


def test_main_exit_zero_and_stdout(capsys):
    code = main(_fast_argv("--format", "json"))
    assert code == 0
    out = capsys.readouterr().out
    parsed = json.loads(out)
    assert parsed["overall"] == "pass"


def test_main_writes_file(tmp_path):
    out = tmp_path / "report.json"
    code = main(_fast_argv("--format", "json", "--out", str(out)))
    assert code == 0
    assert json.loads(out.read_text())["overall"] == "pass"


def test_main_trials_zero_exits_nonzero():
    code = main(["--trials", "0", "--suite", "lemma1", "--out", "/dev/null"])
    assert code == 1


def test_main_invalid_config_exits_two():
    assert main(["--l", "1", "--suite", "theorem9"]) == 2
    assert main(["--pad", "2", "--suite", "theorem9"]) == 2


def test_main_unwritable_output_exits_two():
    code = main(_fast_argv("--out", "/nonexistent-dir/report.json"))
    assert code == 2


def test_main_rejects_unknown_flag():
    with pytest.raises(SystemExit):
        main(["--frobnicate"])


def test_env_seed_override(monkeypatch, capsys):
    monkeypatch.setenv("SYMPSPIN_SEED", "123")
    code = main(_fast_argv("--format", "json"))
    assert code == 0
    parsed = json.loads(capsys.readouterr().out)
    assert parsed["config"]["seed"] == 123


def test_replay_of_failing_counterexample(tmp_path, capsys):
    # craft a genuinely failing counterexample: asymmetric Christoffel data
    from sympspin.connections import Poly, PolynomialConnection, connection_to_json

    n = 4
    gamma = {idx: Poly.zero(n) for idx in product(range(n), repeat=3)}
    gamma[(0, 1, 1)] = Poly.const(n, 1)
    ce = {
        "check": "fedosov.axioms",
        "connection": connection_to_json(PolynomialConnection(2, 0, gamma)),
    }
    path = tmp_path / "ce.json"
    path.write_text(json.dumps(ce))
    code = main(["--replay", str(path)])
    assert code == 1
    result = json.loads(capsys.readouterr().out)
    assert result["reproduced"] is True


def test_replay_of_passing_counterexample(tmp_path, capsys):
    ce = {
        "check": "lemma1",
        "l": 2,
        "a": 1,
        "b": 2,
        "spinor": {"l": 2, "cap": 6, "terms": [{"alpha": [0, 1], "re": "1", "im": "0"}]},
    }
    path = tmp_path / "ce.json"
    path.write_text(json.dumps(ce))
    code = main(["--replay", str(path)])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["reproduced"] is False


def test_replay_accepts_full_report(tmp_path, capsys):
    report = {
        "config": {},
        "checks": [
            {
                "name": "lemma1",
                "paper_anchor": "x",
                "status": "fail",
                "trials_run": 1,
                "elapsed_ms": 0,
                "counterexample": {
                    "check": "lemma1",
                    "l": 2,
                    "a": 1,
                    "b": 2,
                    "spinor": {"l": 2, "cap": 6,
                               "terms": [{"alpha": [0, 0], "re": "1", "im": "0"}]},
                },
            }
        ],
        "overall": "fail",
    }
    path = tmp_path / "report.json"
    path.write_text(json.dumps(report))
    assert main(["--replay", str(path)]) == 0   # healthy instance: not reproduced
