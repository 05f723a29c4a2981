import math
from types import SimpleNamespace

import numpy as np
import pytest

from heckesign.equidist import (
    class_counts,
    classify,
    prime_sign_density,
    prime_sign_sequence,
    shared_primes,
    sign_changes,
    sign_product_proportion_nu,
)
from heckesign.equidist import signs
from heckesign.equidist.signs import SignDensityReport
from heckesign.errors import DegenerateAngleError, PathDisagreementError, RamifiedPrimeError, SourceExhaustedError
from heckesign.newforms import DELTA, EC11, EC37, build_table, lambda_prime_power


@pytest.fixture(scope="module")
def tables():
    return build_table(DELTA, 10 ** 4), build_table(EC11, 10 ** 4)


def _stub_table(lam, label="stub"):
    return SimpleNamespace(lambda_at=lambda p: lam, spec=SimpleNamespace(label=label))


def test_classify():
    values = [1.0, -2.0, 0.0, 1e-13, -1e-13, 1e-12, -1e-12]
    assert classify(values).tolist() == [1, -1, 0, 0, 0, 1, -1]
    assert classify(values, threshold=2.0).tolist() == [0, -1, 0, 0, 0, 0, 0]


def test_class_counts():
    assert class_counts([1, 1, -1, 0, 1]) == (3, 1, 1)
    assert class_counts([]) == (0, 0, 0)


@pytest.mark.parametrize(
    "signs,expected",
    [([1, -1, 1, -1], 3), ([1, 0, 1, 0, -1], 1), ([0, 0], 0), ([], 0), ([-1, -1, 0, 1, 1, 0, -1], 2)],
)
def test_sign_changes(signs, expected):
    assert sign_changes(signs) == expected


def test_report_densities():
    report = SignDensityReport("x", {}, positive=6, negative=3, zero=1)
    assert report.denominator == 10
    assert report.densities == {"positive": 0.6, "negative": 0.3, "zero": 0.1}
    assert report.closed_densities == {"nonnegative": 0.7, "nonpositive": 0.4}
    assert report.nonzero_densities == {"positive": 6 / 9, "negative": 3 / 9}
    assert report.as_dict()["counts"]["denominator"] == 10


def test_empty_report_has_nan_densities():
    report = SignDensityReport("x", {}, 0, 0, 0)
    assert all(math.isnan(v) for v in report.densities.values())


def test_negative_counts_raise():
    with pytest.raises(ValueError):
        SignDensityReport("x", {}, -1, 0, 0)


def test_shared_primes_skip_both_levels():
    t1, t2 = build_table(EC11, 100), build_table(EC37, 100)
    primes, lam1, lam2 = shared_primes(t1, t2, 100)
    assert 11 not in primes.tolist() and 37 not in primes.tolist()
    assert len(primes) == 25 - 2
    assert lam1[0] == t1.lambda_at(2) and lam2[-1] == t2.lambda_at(97)


def test_shared_primes_beyond_tables_raise(tables):
    with pytest.raises(SourceExhaustedError):
        shared_primes(*tables, 10 ** 4 + 1)


def test_nu_density_counts_add_up(tables):
    report = sign_product_proportion_nu(*tables, 5, 5000)
    assert report.positive + report.negative + report.zero == 5000
    assert report.extras["path_deviation"] < 1e-9
    assert report.params["p"] == 5


def test_nu_density_path_disagreement_raises(tables, monkeypatch):
    monkeypatch.setattr(signs, "sin_quotient", lambda theta, nu: 0.0)
    with pytest.raises(PathDisagreementError):
        sign_product_proportion_nu(*tables, 5, 100)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_nu_density_matches_recurrence(tables, p):
    t1, t2 = tables
    x = 300
    values = [lambda_prime_power(t1, p, nu) * lambda_prime_power(t2, p, nu) for nu in range(1, x + 1)]
    expected = class_counts(classify(values))
    report = sign_product_proportion_nu(t1, t2, p, x)
    got = (report.positive, report.negative, report.zero)
    assert np.abs(np.subtract(got, expected)).sum() <= 2


def test_nu_density_tends_to_one_half(tables):
    report = sign_product_proportion_nu(*tables, 5, 20000)
    assert report.densities["positive"] == pytest.approx(0.5, abs=0.02)
    assert report.densities["zero"] == 0


def test_nu_density_at_level_raises(tables):
    with pytest.raises(RamifiedPrimeError):
        sign_product_proportion_nu(*tables, 11, 100)


@pytest.mark.parametrize("lam", [2.0, -2.0])
def test_nu_density_degenerate_angle_raises(lam):
    with pytest.raises(DegenerateAngleError):
        sign_product_proportion_nu(_stub_table(lam), _stub_table(0.5), 5, 10)


@pytest.mark.parametrize("x", [0, -5])
def test_nu_density_bad_x_raises(tables, x):
    with pytest.raises(ValueError):
        sign_product_proportion_nu(*tables, 5, x)


@pytest.mark.parametrize("nu", [1, 3, 5])
def test_prime_density_matches_brute_force(tables, nu):
    t1, t2 = tables
    X = 2000
    signs = []
    for p in range(2, X + 1):
        if p in t1 and p in t2:
            value = lambda_prime_power(t1, p, nu) * lambda_prime_power(t2, p, nu)
            signs.append(1 if value >= 1e-12 else -1 if value <= -1e-12 else 0)
    report = prime_sign_density(t1, t2, nu, X)
    assert (report.positive, report.negative, report.zero) == class_counts(signs)
    assert report.extras["sign_changes"] == sign_changes(signs)


def test_prime_density_extras(tables):
    report = prime_sign_density(*tables, 1, 10 ** 4)
    n = report.denominator
    assert n == 1229 - 1
    assert report.extras["integer_crosscheck"] == 0
    quadrants = report.extras["quadrants"]
    assert sum(q["count"] for q in quadrants.values()) <= n
    assert all(q["expected"] == pytest.approx(n / 4) for q in quadrants.values())
    assert [row[0] for row in report.extras["trace"]] == [10, 100, 1000]


@pytest.mark.parametrize("nu", [1, 3])
def test_prime_density_records_path_deviation(tables, nu):
    report = prime_sign_density(*tables, nu, 10 ** 4)
    assert 0 <= report.extras["path_deviation"] <= 1e-9


def test_prime_density_path_disagreement_raises(tables, monkeypatch):
    monkeypatch.setattr(signs, "hecke_recurrence", lambda lam, nu: np.ones_like(lam))
    with pytest.raises(PathDisagreementError):
        prime_sign_density(*tables, 3, 1000)


@pytest.mark.parametrize("nu", [1, 3])
def test_prime_density_near_one_half(tables, nu):
    report = prime_sign_density(*tables, nu, 10 ** 4)
    assert report.densities["positive"] == pytest.approx(0.5, abs=0.08)
    # supersingular primes of 11a still make up about 1.3% of p <= 10^4
    assert report.densities["zero"] <= 0.02
    assert report.extras["sign_changes"] > 100


def test_prime_density_counts_zero_class():
    # a_19(11a) = a_29(11a) = 0, so lambda(19) lambda'(19) = 0
    t1, t2 = build_table(EC11, 30), build_table(EC37, 30)
    report = prime_sign_density(t1, t2, 1, 30)
    assert report.zero == 3
    assert report.extras["integer_crosscheck"] == 0


@pytest.mark.parametrize("nu", [2, 0, -1])
def test_prime_density_even_nu_raises(tables, nu):
    with pytest.raises(ValueError):
        prime_sign_density(*tables, nu, 100)


def test_prime_sign_sequence(tables):
    pairs = prime_sign_sequence(*tables, 3, 1000)
    report = prime_sign_density(*tables, 3, 1000)
    assert len(pairs) == report.denominator
    assert [p for p, _ in pairs][:4] == [2, 3, 5, 7]
    assert class_counts([s for _, s in pairs]) == (report.positive, report.negative, report.zero)
