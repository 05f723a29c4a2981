import math

import pytest

from heckesign.arith import PrimeSieve, divisors, factorize, is_squarefree, kronecker, mobius, sieve


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def _mobius(n):
    # brute force from the definition
    mu = 1
    for d in range(2, n + 1):
        if n % (d * d) == 0 and _is_prime(d):
            return 0
        if n % d == 0 and _is_prime(d):
            mu = -mu
    return mu


def _legendre(a, p):
    # Euler's criterion
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@pytest.mark.parametrize("limit", [2, 3, 10, 97, 100, 1000, 10 ** 4])
def test_sieve_matches_trial_division(limit):
    got = list(sieve(limit))
    expected = [n for n in range(limit + 1) if _is_prime(n)]
    assert got == expected


@pytest.mark.parametrize("x,expected", [(1, 0), (2, 1), (10, 4), (100, 25), (1000, 168)])
def test_prime_pi(x, expected):
    assert sieve(1000).prime_pi(x) == expected


def test_prime_pi_one_million():
    s = sieve(10 ** 6)
    assert s.prime_pi(10 ** 6) == len(s) == 78498
    assert s.primes[-1] == 999983


def test_primes_up_to_is_read_only():
    s = sieve(50)
    assert s.primes_up_to(20).tolist() == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(ValueError):
        s.primes[0] = 4


def test_sieve_contains():
    s = sieve(30)
    assert 29 in s
    assert 27 not in s
    assert 31 not in s
    assert -3 not in s


@pytest.mark.parametrize("x", [101, 10 ** 6])
def test_prime_pi_beyond_limit_raises(x):
    with pytest.raises(ValueError):
        sieve(100).prime_pi(x)


@pytest.mark.parametrize("limit", [0, 1, -5])
def test_bad_sieve_limit_value_raises(limit):
    with pytest.raises(ValueError):
        PrimeSieve(limit)


@pytest.mark.parametrize("limit", ["100", 10.0, None])
def test_bad_sieve_limit_type_raises(limit):
    with pytest.raises(TypeError):
        PrimeSieve(limit)


@pytest.mark.parametrize("n", [1, 2, 12, 97, 360, 1001, 2 ** 10, 99991, 600851475143])
def test_factorize_multiplies_back(n):
    factors = factorize(n)
    assert math.prod(p ** e for p, e in factors) == n
    assert all(_is_prime(p) for p, _ in factors if p < 10 ** 6)
    assert [p for p, _ in factors] == sorted(p for p, _ in factors)


@pytest.mark.parametrize("n", range(1, 200))
def test_mobius_matches_definition(n):
    assert mobius(n) == _mobius(n)


@pytest.mark.parametrize("n", range(2, 200))
def test_mobius_sums_to_zero_over_divisors(n):
    assert sum(mobius(d) for d in divisors(n)) == 0


@pytest.mark.parametrize("n", [1, 6, 12, 36, 97, 360])
def test_divisors(n):
    assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


@pytest.mark.parametrize("n,expected", [(1, True), (6, True), (12, False), (30, True), (49, False)])
def test_is_squarefree(n, expected):
    assert is_squarefree(n) is expected


@pytest.mark.parametrize("n", [0, -1])
def test_factorize_bad_value_raises(n):
    with pytest.raises(ValueError):
        factorize(n)


@pytest.mark.parametrize("a", range(-20, 21))
@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 37])
def test_kronecker_is_legendre_at_odd_primes(a, p):
    assert kronecker(a, p) == _legendre(a, p)


@pytest.mark.parametrize("a", range(-30, 31))
@pytest.mark.parametrize("m,n", [(3, 5), (7, 9), (15, 11), (2, 3), (4, 5), (8, 21)])
def test_kronecker_multiplicative_in_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


@pytest.mark.parametrize(
    "a,n,expected",
    [
        (2, 15, 1),
        (-4, 5, 1),
        (-4, 3, -1),
        (-1, 3, -1),
        (1, 0, 1),
        (5, 0, 0),
        (-3, -1, -1),
        (3, -1, 1),
        (1, 2, 1),
        (3, 2, -1),
        (5, 2, -1),
        (7, 2, 1),
        (4, 2, 0),
        (6, 9, 0),
    ],
)
def test_kronecker_values(a, n, expected):
    assert kronecker(a, n) == expected
