import csv
import json

import numpy as np
import pytest

from heckesign import __version__
from heckesign.cli import main
from heckesign.equidist import signs


SMALL_VERIFY = {
    "verify_tau_limit": 2000,
    "verify_identity_limit": 200,
    "verify_identity_nu": 50,
    "verify_deligne_ec_limit": 500,
    "verify_deligne_delta_limit": 500,
    "verify_measure_nu": 9,
    "verify_panels": 10 ** 5,
    "verify_x": 2000,
    "verify_density_limit": 2000,
    "verify_mobius_n": 30,
    "verify_mobius_specs": 5,
    "verify_draws": 200,
    "verify_determinism_limit": 1000,
    "samples": 2000,
    "height": 50,
    "density_tolerance": 0.5,
    "nu_tolerance": 0.5,
    "ks_max": 1.0,
    "sampler_ks_max": 1.0,
    "deviation_max": 100.0,
    "zero_density_max": 1.0,
}


@pytest.fixture
def cli(tmp_path):
    cache = tmp_path / "cache"

    def run(*args, out="out"):
        return main([*args, "--cache-dir", str(cache), "--out", str(tmp_path / out)])

    return run


def _json(path):
    return json.loads(path.read_text(encoding="utf-8"))


def _csv(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.reader(f))


def test_measure_positive_class(cli, tmp_path, capsys):
    assert cli("measure", "--nu", "3", "--class", "pos") == 0
    assert "nu=3 eps=0.0 pos:" in capsys.readouterr().out
    report = _json(tmp_path / "out" / "measure.json")
    assert report["version"] == __version__
    [value] = report["measures"]
    assert value["measure"] == pytest.approx(0.5, abs=1e-12)
    assert "out" not in report["config"] and "cache_dir" not in report["config"]


@pytest.mark.parametrize("sign_class", ["pos-neg", "neg-neg"])
def test_measure_product_classes(cli, tmp_path, sign_class):
    assert cli("measure", "--nu", "1", "5", "--class", sign_class) == 0
    values = _json(tmp_path / "out" / "measure.json")["measures"]
    assert [v["nu"] for v in values] == [1, 5]
    assert all(v["measure"] == pytest.approx(0.25, abs=1e-12) for v in values)


def test_measure_eps_shrinks(cli, tmp_path):
    assert cli("measure", "--nu", "1", "--class", "pos", "--eps", "0.0", "0.5") == 0
    full, shrunk = (v["measure"] for v in _json(tmp_path / "out" / "measure.json")["measures"])
    assert shrunk < full


def test_coeffs(cli, tmp_path):
    assert cli("coeffs", "--form", "ec11", "--limit", "100") == 0
    rows = _csv(tmp_path / "out" / "coeffs_ec11_100.csv")
    assert rows[0] == ["p", "a_p", "lambda", "theta"]
    assert rows[1][:2] == ["2", "-2"]
    assert "11" not in [row[0] for row in rows[1:]]
    assert len(rows) == 1 + 24
    assert (tmp_path / "cache" / "ec11_100.csv").exists()


def test_coeffs_from_table_file(cli, tmp_path):
    path = tmp_path / "tau.csv"
    path.write_text("# label=tau weight=12 level=1\n2,-24\n3,252\n5,4830\n7,-16744\n")
    assert cli("coeffs", "--form", str(path), "--limit", "7") == 0
    rows = _csv(tmp_path / "out" / "coeffs_tau_7.csv")
    assert [row[:2] for row in rows[1:]] == [["2", "-24"], ["3", "252"], ["5", "4830"], ["7", "-16744"]]


def test_angles(cli, tmp_path):
    assert cli("angles", "--form", "delta", "--limit", "100", "--height", "50") == 0
    rows = _csv(tmp_path / "out" / "angles_delta_100.csv")
    assert rows[0] == ["p", "theta", "theta_over_pi"]
    assert len(rows) == 1 + 25


def test_relation_screen(cli, tmp_path, capsys):
    assert cli("relation-screen", "--p", "5", "--height", "50") == 0
    report = _json(tmp_path / "out" / "relation_screen.json")
    assert report["config"]["p"] == 5
    assert "screen" in report
    assert capsys.readouterr().out


def test_weyl(cli, tmp_path):
    assert cli("weyl", "--p", "5", "--x", "2000") == 0
    report = _json(tmp_path / "out" / "weyl.json")
    assert report["passed"] is None
    assert report["box_area"] == 0.25


def test_nu_density(cli, tmp_path):
    assert cli("nu-density", "--p", "5", "--x", "2000", "--height", "50") == 0
    report = _json(tmp_path / "out" / "nu_density.json")
    counts = report["report"]["counts"]
    assert counts["positive"] + counts["negative"] + counts["zero"] == counts["denominator"] == 2000
    rows = _csv(tmp_path / "out" / "nu_density.csv")
    assert rows[0] == ["class", "count", "density", "nonzero_density"]
    assert [row[0] for row in rows[1:]] == ["positive", "negative", "zero"]
    assert sum(int(row[1]) for row in rows[1:]) == 2000
    assert rows[3][3] == ""


def test_path_disagreement_fails_the_run(cli, tmp_path, monkeypatch, capsys):
    monkeypatch.setattr(signs, "hecke_recurrence", lambda lam, nu: np.ones_like(lam))
    assert cli("prime-density", "--nu", "3", "--limit", "500") == 1
    assert "recurrence and sin-quotient differ" in capsys.readouterr().err


@pytest.mark.parametrize(
    "data",
    [
        {"k": 1, "N": 11, "t": 1, "chi": {"kind": "quadratic"}, "underlying": "ec11"},
        {"k": 1, "N": 11, "t": 1, "chi": "quadratic", "underlying": "ec11"},
        [1, 2, 3],
    ],
)
def test_malformed_halfint_file_exits_2(cli, tmp_path, data, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert cli("halfint-density", "--h1", str(path), "--limit", "100") == 2
    assert "heckesign: error:" in capsys.readouterr().err


def test_prime_density_files(cli, tmp_path):
    assert cli("prime-density", "--nu", "1", "3", "--limit", "2000", "--window", "50") == 0
    out = tmp_path / "out"
    report = _json(out / "prime_density.json")
    assert [r["params"]["nu"] for r in report["reports"]] == [1, 3]
    for nu in (1, 3):
        rows = _csv(out / f"prime_density_nu{nu}.csv")
        assert rows[0] == ["class", "count", "density"]
        assert [row[0] for row in rows[1:]] == ["positive", "negative", "zero"]
        assert sum(int(row[1]) for row in rows[1:]) == 303 - 1
        window = _csv(out / f"prime_density_nu{nu}_window50.csv")
        assert window[0] == ["p", "positive", "negative", "zero"]
        assert len(window) == 1 + 302 - 49


def test_pair_st_files(cli, tmp_path):
    assert cli("pair-st", "--limit", "2000", "--bins", "4") == 0
    rows = _csv(tmp_path / "out" / "pair_st_histogram.csv")
    assert rows[0] == ["i", "j", "observed", "expected"]
    assert len(rows) == 1 + 16
    assert sum(int(row[2]) for row in rows[1:]) == 302
    assert "report" in _json(tmp_path / "out" / "pair_st.json")


def test_halfint_density_files(cli, tmp_path):
    assert cli("halfint-density", "--nu", "1", "--limit", "2000", "--eps", "0.5", "0.1") == 0
    report = _json(tmp_path / "out" / "halfint_density.json")
    assert report["reports"][0]["extras"]["predicate_mismatches"] == 0
    rows = _csv(tmp_path / "out" / "epsilon_bounds.csv")
    assert len(rows) == 1 + 2
    assert rows[0][:2] == ["nu", "eps"]
    assert [row[-1] for row in rows[1:]] == ["0", "0"]


def test_halfint_density_from_json_spec(cli, tmp_path):
    path = tmp_path / "lift.json"
    path.write_text(json.dumps({"k": 6, "N": 1, "t": 1, "chi": {"kind": "quadratic", "D": -4}, "underlying": "delta"}))
    assert cli("halfint-density", "--h1", str(path), "--nu", "1", "--limit", "1000", "--eps", "0.5") == 0
    report = _json(tmp_path / "out" / "halfint_density.json")
    assert report["reports"][0]["params"]["forms"] == ["lift", "ec11-lift"]


def test_reports_are_byte_identical(cli, tmp_path):
    # the first run builds the tables, the second reads them from the cache
    args = ("prime-density", "--nu", "1", "--limit", "1000", "--window", "20")
    assert cli(*args, out="first") == 0
    assert cli(*args, out="second") == 0
    first = sorted(p.name for p in (tmp_path / "first").iterdir())
    assert first == sorted(p.name for p in (tmp_path / "second").iterdir())
    for name in first:
        assert (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()


def test_config_file_and_flag_precedence(cli, tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"nu": [5], "sign_class": "neg"}))
    assert cli("measure", "--config", str(config), "--class", "pos") == 0
    report = _json(tmp_path / "out" / "measure.json")
    assert report["config"]["nu"] == [5]
    assert report["config"]["sign_class"] == "pos"
    assert "config" not in report["config"]


@pytest.mark.parametrize(
    "args",
    [
        ("prime-density", "--nu", "2", "--limit", "100"),
        ("prime-density", "--f1", "nosuch", "--limit", "100"),
        ("halfint-density", "--eps", "0", "--limit", "100"),
        ("halfint-density", "--h1", "nosuch", "--limit", "100"),
        ("measure", "--eps", "1.5"),
    ],
)
def test_bad_inputs_exit_2(cli, args, capsys):
    assert cli(*args) == 2
    assert "heckesign: error:" in capsys.readouterr().err


def test_no_build_without_cache_exits_2(cli):
    assert cli("coeffs", "--limit", "50", "--no-build") == 2


def test_no_build_with_cache(cli):
    assert cli("coeffs", "--limit", "50") == 0
    assert cli("coeffs", "--limit", "50", "--no-build") == 0


def test_unknown_command_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["nosuch", "--out", str(tmp_path)])
    assert e.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as e:
        main(["--version"])
    assert e.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_check_passes_with_loose_tolerances(cli, tmp_path):
    config = tmp_path / "loose.json"
    config.write_text(json.dumps({"density_tolerance": 0.5, "zero_density_max": 1.0}))
    assert cli("prime-density", "--limit", "1000", "--check", "--config", str(config)) == 0
    assert _json(tmp_path / "out" / "prime_density.json")["passed"] is True


def test_check_fails_outside_tolerance(cli, tmp_path):
    config = tmp_path / "strict.json"
    config.write_text(json.dumps({"ks_max": 0.0}))
    assert cli("pair-st", "--limit", "1000", "--check", "--config", str(config)) == 1
    assert _json(tmp_path / "out" / "pair_st.json")["passed"] is False
    # without --check the same run succeeds
    assert cli("pair-st", "--limit", "1000", "--config", str(config)) == 0


def test_verify_all_small(cli, tmp_path, capsys):
    config = tmp_path / "verify.json"
    config.write_text(json.dumps(SMALL_VERIFY))
    assert cli("verify-all", "--config", str(config)) == 0
    out = tmp_path / "out"
    summary = _json(out / "verify.json")
    assert summary["passed"] is True
    assert [c["criterion"] for c in summary["criteria"]] == list(range(1, 10))
    for n in range(1, 10):
        assert _json(out / f"criterion_{n}.json")["result"]["passed"] is True
    assert capsys.readouterr().out.count("PASS") == 9
