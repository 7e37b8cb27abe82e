import json
import math
import os

import pytest

from dualnorm.cli import (
    EXIT_CHECK_FAILED,
    EXIT_CONFIG_ERROR,
    EXIT_OK,
    SUITES,
    ConfigError,
    SuiteConfig,
    emit_report,
    main,
    run_suite,
)
from dualnorm.dualmodel import preset_dual
from dualnorm.norms import ExponentP
from dualnorm.report import (
    CheckReport,
    equality_report,
    inequality_report,
    reports_from_json,
    reports_to_csv,
    reports_to_json,
)


def small_config(suite="clarkson", **kw):
    base = dict(
        suite=suite,
        dual=preset_dual("s3"),
        p_list=(ExponentP(1.5),),
        family="sch",
        trials=5,
        seed=1,
    )
    base.update(kw)
    return SuiteConfig(**base)


def test_run_suite_clarkson_counts_and_passes():
    reports = run_suite(small_config(trials=10))
    assert len(reports) == 10
    assert all(r.passed for r in reports)


def test_run_suite_is_deterministic():
    a = reports_to_json(run_suite(small_config(suite="duality", trials=3)))
    b = reports_to_json(run_suite(small_config(suite="duality", trials=3)))
    assert a == b


def test_run_suite_all_is_stable_and_sorted():
    cfg = small_config(suite="all", trials=2, p_list=(ExponentP(1.5), ExponentP(2.0)))
    reports = run_suite(cfg)
    keys = [(r.suite, r.case_id) for r in reports]
    assert keys == sorted(keys)
    assert {r.suite for r in reports} == set(SUITES)
    again = run_suite(cfg)
    assert reports_to_json(reports) == reports_to_json(again)


def test_run_suite_unknown_name():
    with pytest.raises(ConfigError):
        run_suite(small_config(suite="nonsense"))


def test_suite_config_validation():
    with pytest.raises(ConfigError):
        small_config(trials=0)
    with pytest.raises(ConfigError):
        small_config(p_list=())
    with pytest.raises(ConfigError):
        small_config(family="weird")


def test_report_invariant_passed_iff_slack_above_tol():
    reports = run_suite(small_config(suite="all", trials=2))
    for r in reports:
        assert r.passed == (r.slack >= -r.tol)


def test_report_json_roundtrip(tmp_path):
    reports = run_suite(small_config(trials=4))
    path = tmp_path / "rep.json"
    emit_report(reports, "json", str(path))
    back = reports_from_json(path.read_text())
    assert back == reports


def test_report_inf_exponent_serialization():
    rep = inequality_report("s", "c", math.inf, 1.0, 2.0, 1e-10, "ab", "x")
    d = rep.as_dict()
    assert d["p"] == "inf"
    assert CheckReport.from_dict(json.loads(json.dumps(d))) == rep


def test_emit_csv_empty_and_failing(tmp_path):
    path = tmp_path / "rep.csv"
    emit_report([], "csv", str(path))
    text = path.read_text()
    assert text.splitlines()[0].startswith("suite,case_id,p,")
    assert len(text.splitlines()) == 1

    failing = equality_report("s", "c", 2.0, 1.0, 5.0, 1e-10, "ab", "x")
    assert not failing.passed
    emit_report([failing], "csv", str(path))
    rows = path.read_text().splitlines()
    assert len(rows) == 2 and "False" in rows[1]


def test_emit_rejects_unknown_format(tmp_path):
    with pytest.raises(ConfigError):
        emit_report([], "xml", str(tmp_path / "rep.xml"))


def test_byte_identical_report_files(tmp_path):
    cfg = small_config(suite="two_point", trials=6)
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    emit_report(run_suite(cfg), "json", str(p1))
    emit_report(run_suite(cfg), "json", str(p2))
    assert p1.read_bytes() == p2.read_bytes()


# -- command line ----------------------------------------------------------------


def test_main_verify_ok(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code = main(
        [
            "verify", "clarkson", "--dual", "s3", "--p", "1.5", "--trials", "5",
            "--seed", "1", "--out", str(out),
        ]
    )
    assert code == EXIT_OK
    assert "checks passed" in capsys.readouterr().out
    assert out.exists() and reports_from_json(out.read_text())


def test_main_verify_fraction_and_inf_exponents(tmp_path):
    out = tmp_path / "rep.json"
    code = main(
        [
            "verify", "holder", "--dual", "torus(4)", "--p", "3/2,inf",
            "--trials", "2", "--seed", "0", "--out", str(out),
        ]
    )
    assert code == EXIT_OK
    assert any(r.p == math.inf for r in reports_from_json(out.read_text()))


def test_main_bad_preset_is_config_error(capsys):
    code = main(["verify", "clarkson", "--dual", "torus(zero)", "--trials", "2"])
    assert code == EXIT_CONFIG_ERROR
    assert "error:" in capsys.readouterr().err


def test_main_unwritable_output_is_config_error(tmp_path):
    code = main(
        [
            "verify", "clarkson", "--dual", "s3", "--p", "1.5", "--trials", "2",
            "--out", str(tmp_path / "no" / "such" / "dir" / "rep.json"),
        ]
    )
    assert code == EXIT_CONFIG_ERROR


def test_main_tol_override_can_force_failures(capsys):
    # exploratory negative tolerance rejects every check: exit code 1
    code = main(
        ["verify", "adjoint", "--dual", "s3", "--p", "2", "--trials", "2", "--tol", "-1"]
    )
    assert code == EXIT_CHECK_FAILED
    assert "FAIL" in capsys.readouterr().out


def test_main_field_random_and_show(tmp_path, capsys):
    path = tmp_path / "field.json"
    assert main(["field", "random", "--dual", "su2_trunc(3)", "--seed", "9", "--out", str(path)]) == EXIT_OK
    doc = json.loads(path.read_text())
    assert doc["dual"]["name"] == "su2_trunc(3)"
    assert len(doc["field"]["blocks"]) == 3
    assert main(["field", "show", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "su2_trunc(3)" in out and "sch-2 norm" in out


def test_main_env_seed_default(tmp_path, monkeypatch):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    monkeypatch.setenv("DUALNORM_SEED", "77")
    main(["field", "random", "--dual", "s3", "--out", str(p1)])
    monkeypatch.delenv("DUALNORM_SEED")
    main(["field", "random", "--dual", "s3", "--seed", "77", "--out", str(p2)])
    assert p1.read_bytes() == p2.read_bytes()


def test_tol_override_loosens(tmp_path):
    cfg = small_config(suite="norms", trials=2, tol_override=1e-6)
    for r in run_suite(cfg):
        assert r.tol == pytest.approx(1e-6 * max(1.0, abs(r.rhs)))
