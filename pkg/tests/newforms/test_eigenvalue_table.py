import math

import numpy as np
import pytest

from heckesign.errors import CacheMissError, DeligneBoundError, RamifiedPrimeError, SourceExhaustedError
from heckesign.newforms import (
    DELTA,
    EC11,
    EC37,
    EigenvalueTable,
    ExplicitTable,
    NewformSpec,
    build_table,
    form_from_table_file,
    get_preset,
    lambda_prime_power,
    read_table_csv,
    resolve_form,
    write_table,
)
from heckesign.newforms.hecke import hecke_recurrence_exact
from heckesign.newforms.table import cache_file_name
from heckesign.qseries import ramanujan_tau


TAU = {2: -24, 3: 252, 5: 4830, 7: -16744}


@pytest.mark.parametrize("p,expected", sorted(TAU.items()))
def test_delta_raw_values(p, expected):
    table = build_table(DELTA, 10)
    assert table.raw_at(p) == expected
    assert table.lambda_at(p) == pytest.approx(expected / p ** 5.5, rel=1e-14)


def test_delta_table_primes():
    table = build_table(DELTA, 30)
    assert table.primes.tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(table) == 10
    assert 29 in table and 31 not in table


def test_elliptic_table_skips_level():
    table = build_table(EC11, 50)
    assert 11 not in table
    assert table.raw_at(31) == 7
    with pytest.raises(RamifiedPrimeError):
        table.lambda_at(11)


def test_prime_beyond_table_raises():
    table = build_table(EC37, 20)
    with pytest.raises(SourceExhaustedError):
        table.lambda_at(23)


@pytest.mark.parametrize("spec,limit", [(DELTA, 3000), (EC11, 3000), (EC37, 3000)])
def test_deligne_bound_holds(spec, limit):
    table = build_table(spec, limit)
    assert np.all(np.abs(table.lambdas) <= 2)


def test_deligne_violation_raises():
    with pytest.raises(DeligneBoundError):
        EigenvalueTable(EC11, [2, 3], [-2, 4], 3)


def test_table_arrays_are_read_only():
    table = build_table(EC11, 20)
    with pytest.raises(ValueError):
        table.lambdas[0] = 0.0
    with pytest.raises(ValueError):
        table.primes[0] = 4


def test_restrict():
    table = build_table(EC11, 100)
    small = table.restrict(20)
    assert small.primes.tolist() == [2, 3, 5, 7, 13, 17, 19]
    assert small.bound == 20
    assert small.raw_at(13) == 4


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
@pytest.mark.parametrize("nu", [0, 1, 2, 3])
def test_coefficient_prime_power_matches_tau(p, nu):
    tau = ramanujan_tau(13 ** 3)
    table = build_table(DELTA, 13)
    assert table.coefficient_prime_power(p, nu) == tau[p ** nu]


@pytest.mark.parametrize("nu", [0, 1, 2, 5, 10])
def test_lambda_prime_power_normalizes_exact_value(nu):
    table = build_table(DELTA, 10)
    exact = table.coefficient_prime_power(5, nu)
    assert lambda_prime_power(table, 5, nu) == pytest.approx(exact / 5 ** (5.5 * nu), rel=1e-9, abs=1e-12)


def test_hecke_recurrence_exact_weight_two():
    # a(p^2) = a(p)^2 - p for weight 2
    assert hecke_recurrence_exact(-2, 2, 2, 2) == 2
    assert hecke_recurrence_exact(7, 2, 31, 2) == 49 - 31


def test_cache_round_trip(tmp_path):
    built = build_table(EC11, 200, cache_dir=tmp_path)
    path = tmp_path / cache_file_name(EC11, 200)
    assert path.exists()
    loaded = build_table(EC11, 200, cache_dir=tmp_path, build=False)
    assert loaded.primes.tolist() == built.primes.tolist()
    assert loaded.raw == built.raw
    assert loaded.lambdas.tolist() == built.lambdas.tolist()


def test_cache_file_format(tmp_path):
    build_table(EC11, 10, cache_dir=tmp_path)
    text = (tmp_path / "ec11_10.csv").read_text(encoding="utf-8")
    assert text == "# label=ec11 weight=2 level=11\n2,-2\n3,-1\n5,1\n7,-2\n"


def test_cache_header_mismatch_raises(tmp_path):
    build_table(EC11, 10, cache_dir=tmp_path)
    (tmp_path / "ec37_10.csv").write_text((tmp_path / "ec11_10.csv").read_text())
    with pytest.raises(ValueError):
        build_table(EC37, 10, cache_dir=tmp_path)


def test_no_build_raises_on_cache_miss(tmp_path):
    with pytest.raises(CacheMissError):
        build_table(DELTA, 10, cache_dir=tmp_path, build=False)


def test_delta_source_exhausted():
    with pytest.raises(SourceExhaustedError):
        build_table(DELTA, 10 ** 5 + 1)


@pytest.mark.parametrize("limit", ["10", 10.0])
def test_bad_limit_type_raises(limit):
    with pytest.raises(TypeError):
        build_table(EC11, limit)


def test_explicit_table_source(tmp_path):
    path = tmp_path / "tau.csv"
    path.write_text("# label=tau weight=12 level=1\n2,-24\n3,252\n5,4830\n7,-16744\n")
    spec = form_from_table_file(path)
    assert (spec.label, spec.weight, spec.level) == ("tau", 12, 1)
    table = build_table(spec, 7)
    assert table.lambdas.tolist() == build_table(DELTA, 7).lambdas.tolist()


def test_explicit_table_missing_prime(tmp_path):
    path = tmp_path / "short.csv"
    path.write_text("2,-24\n3,252\n")
    spec = NewformSpec("short", weight=12, level=1, source=ExplicitTable(path))
    build_table(spec, 3)
    with pytest.raises(SourceExhaustedError):
        build_table(spec, 5)


@pytest.mark.parametrize(
    "text",
    ["2,-24\n2,252\n", "2;-24\n", "2,x\n", "3,1\n2,1\n"],
)
def test_malformed_table_raises(tmp_path, text):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(ValueError):
        read_table_csv(path)


def test_table_without_header_cannot_name_a_form(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("2,-24\n")
    with pytest.raises(ValueError):
        form_from_table_file(path)


def test_write_then_read(tmp_path):
    table = build_table(EC37, 50)
    write_table(table, tmp_path / "t.csv")
    header, values = read_table_csv(tmp_path / "t.csv")
    assert header == {"label": "ec37", "weight": "2", "level": "37"}
    assert values == dict(zip(table.primes.tolist(), table.raw))


def test_resolve_form(tmp_path):
    assert resolve_form("delta") is DELTA
    path = tmp_path / "form.csv"
    path.write_text("# label=mine weight=2 level=11\n2,-2\n")
    assert resolve_form(str(path)).label == "mine"
    with pytest.raises(ValueError):
        resolve_form("no-such-form")


@pytest.mark.parametrize("label", ["ec19", "", "Delta"])
def test_unknown_preset_raises(label):
    with pytest.raises(ValueError):
        get_preset(label)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"weight": 3, "level": 1},
        {"weight": 0, "level": 1},
        {"weight": 2, "level": 0},
        {"weight": 4, "level": 11},
    ],
)
def test_bad_spec_values_raise(kwargs):
    with pytest.raises(ValueError):
        NewformSpec("bad", source=EC11.source, **kwargs)


def test_bad_spec_label_raises():
    with pytest.raises(ValueError):
        NewformSpec("a b", weight=2, level=11, source=EC11.source)


def test_normalization_is_exact_for_weight_two():
    table = build_table(EC11, 10)
    assert table.lambda_at(2) == -2 / math.sqrt(2)


def test_explicit_table_cache_follows_file_contents(tmp_path):
    path = tmp_path / "tau.csv"
    path.write_text("# label=tau weight=12 level=1\n2,-24\n3,252\n")
    spec = form_from_table_file(path)
    first = build_table(spec, 3, cache_dir=tmp_path / "cache")
    path.write_text("# label=tau weight=12 level=1\n2,-23\n3,252\n")
    second = build_table(spec, 3, cache_dir=tmp_path / "cache")
    assert first.raw == (-24, 252)
    assert second.raw == (-23, 252)
    assert len(list((tmp_path / "cache").iterdir())) == 2
    assert cache_file_name(spec, 3).startswith("tau_3_")
