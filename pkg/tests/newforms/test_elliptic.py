import pytest

from heckesign.errors import BadReductionError
from heckesign.newforms import EC11, EC37, EllipticCurve, count_points, ec_ap, ec_ap_many
from heckesign.arith import sieve


EC11_AP = {2: -2, 3: -1, 5: 1, 7: -2, 13: 4, 17: -2, 19: 0, 23: -1, 29: 0, 31: 7}
EC37_AP = {2: -2, 3: -3, 5: -2, 7: -1, 11: -5, 13: -2, 17: 0, 19: 0, 23: 2, 29: 6}


def _naive_count(curve, p):
    a1, a2, a3, a4, a6 = curve.coefficients
    affine = sum(
        1
        for x in range(p)
        for y in range(p)
        if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p == 0
    )
    return affine + 1


@pytest.mark.parametrize("p,expected", sorted(EC11_AP.items()))
def test_ec11_known_traces(p, expected):
    assert ec_ap(EC11.source, p) == expected


@pytest.mark.parametrize("p,expected", sorted(EC37_AP.items()))
def test_ec37_known_traces(p, expected):
    assert ec_ap(EC37.source, p) == expected


@pytest.mark.parametrize("curve", [EC11.source, EC37.source, EllipticCurve(1, 0, 0, 3, 5)])
@pytest.mark.parametrize("p", [2, 3, 5, 7, 13, 41, 97, 101])
def test_point_count_matches_enumeration(curve, p):
    if not curve.has_good_reduction(p):
        pytest.skip("bad reduction")
    assert count_points(curve, p) == _naive_count(curve, p)


@pytest.mark.parametrize("curve,expected", [(EC11.source, -11 ** 5), (EC37.source, 37)])
def test_discriminants(curve, expected):
    assert curve.discriminant == expected


def test_bad_primes():
    assert EC11.source.bad_primes() == [11]
    assert EC37.source.bad_primes() == [37]


@pytest.mark.parametrize("curve,p", [(EC11.source, 11), (EC37.source, 37)])
def test_bad_reduction_raises(curve, p):
    with pytest.raises(BadReductionError):
        ec_ap(curve, p)
    with pytest.raises(BadReductionError):
        ec_ap_many(curve, [2, 3, p])


def test_bad_reduction_is_value_error():
    with pytest.raises(ValueError):
        ec_ap(EC11.source, 11)


@pytest.mark.parametrize("p", [1, 4, 9, 91])
def test_non_prime_raises(p):
    with pytest.raises(ValueError):
        ec_ap(EC11.source, p)


def test_non_integer_prime_raises():
    with pytest.raises(TypeError):
        ec_ap(EC11.source, 5.0)


@pytest.mark.parametrize("workers", [1, 2])
def test_ec_ap_many_keeps_order(workers):
    primes = [p for p in sieve(500) if p != 11]
    got = ec_ap_many(EC11.source, primes, workers=workers)
    assert got == [ec_ap(EC11.source, p) for p in primes]


@pytest.mark.parametrize("p", [p for p in sieve(2000) if p != 37])
def test_hasse_bound(p):
    assert ec_ap(EC37.source, p) ** 2 <= 4 * p
