import math

import numpy as np
import pytest

from heckesign.newforms import hecke_recurrence, hecke_recurrence_exact, sin_quotient


def _chebyshev_u(x, nu):
    # U_nu(x) from the explicit sum
    return sum(
        (-1) ** j * math.comb(nu - j, j) * (2 * x) ** (nu - 2 * j)
        for j in range(nu // 2 + 1)
    )


@pytest.mark.parametrize("lam", [-2.0, -1.3, -0.5, 0.0, 0.7, 1.9, 2.0])
@pytest.mark.parametrize("nu", [0, 1, 2, 3, 7, 12])
def test_recurrence_is_chebyshev(lam, nu):
    assert hecke_recurrence(lam, nu) == pytest.approx(_chebyshev_u(lam / 2, nu), abs=1e-9)


@pytest.mark.parametrize("theta", [0.1, 0.5, 1.0, math.pi / 3, 2.0, 3.0])
@pytest.mark.parametrize("nu", range(0, 60))
def test_recurrence_matches_sin_quotient(theta, nu):
    lam = 2 * math.cos(theta)
    expected = math.sin((nu + 1) * theta) / math.sin(theta)
    assert hecke_recurrence(lam, nu) == pytest.approx(expected, rel=1e-9, abs=1e-9)
    assert sin_quotient(theta, nu) == pytest.approx(expected, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("theta,sign", [(0.0, 1), (math.pi, -1)])
@pytest.mark.parametrize("nu", [0, 1, 2, 5])
def test_sin_quotient_limit_at_endpoints(theta, sign, nu):
    assert sin_quotient(theta, nu) == pytest.approx((nu + 1) * sign ** nu)
    assert hecke_recurrence(2.0 * sign, nu) == pytest.approx((nu + 1) * sign ** nu)


def test_vectorised_inputs():
    thetas = np.linspace(0.1, 3.0, 50)
    got = hecke_recurrence(2 * np.cos(thetas), 9)
    expected = np.sin(10 * thetas) / np.sin(thetas)
    assert isinstance(got, np.ndarray)
    assert np.allclose(got, expected, rtol=1e-9, atol=1e-9)
    assert np.allclose(sin_quotient(thetas, 9), expected)


@pytest.mark.parametrize("nu", range(0, 30))
def test_chebyshev_bound(nu):
    lams = np.linspace(-2, 2, 401)
    assert np.all(np.abs(hecke_recurrence(lams, nu)) <= nu + 1 + 1e-9)


@pytest.mark.parametrize("a_p,p,weight", [(-24, 2, 12), (252, 3, 12), (-2, 2, 2), (7, 31, 2)])
@pytest.mark.parametrize("nu", range(0, 8))
def test_exact_recurrence_normalizes_to_float_recurrence(a_p, p, weight, nu):
    scale = p ** ((weight - 1) / 2)
    exact = hecke_recurrence_exact(a_p, nu, p, weight)
    assert exact / scale ** nu == pytest.approx(hecke_recurrence(a_p / scale, nu), rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("nu", [-1, -5])
def test_negative_nu_raises(nu):
    with pytest.raises(ValueError):
        hecke_recurrence(1.0, nu)
    with pytest.raises(ValueError):
        sin_quotient(1.0, nu)


@pytest.mark.parametrize("nu", [1.0, "2", None])
def test_bad_nu_type_raises(nu):
    with pytest.raises(TypeError):
        hecke_recurrence(1.0, nu)
