"""
Prime-power eigenvalues from the prime eigenvalue.

At a good prime p the normalized eigenvalues satisfy

    lambda(p^(nu + 1)) = lambda(p) lambda(p^nu) - lambda(p^(nu - 1))

with lambda(1) = 1, so lambda(p^nu) = U_nu(lambda(p) / 2) is a Chebyshev
polynomial of the second kind and, writing lambda(p) = 2 cos(theta),

    lambda(p^nu) = sin((nu + 1) theta) / sin(theta).

Both functions below accept scalars or numpy arrays.

"""
import numpy as np


# |sin(theta)| below which the sin-quotient is replaced by its limit
SIN_EPSILON = 1e-12


def hecke_recurrence(lam, nu):
    """
    lambda(p^nu) from lambda(p) by the three-term Hecke recurrence.

    Examples
    --------

    >>> hecke_recurrence(0.0, 2)
    -1.0

    """
    _validate_nu(nu)
    lam = np.asarray(lam, dtype=float)
    prev = np.ones_like(lam)
    if nu == 0:
        return _unwrap(prev)
    cur = lam.copy()
    for _ in range(nu - 1):
        prev, cur = cur, lam * cur - prev
    return _unwrap(cur)


def sin_quotient(theta, nu):
    """
    sin((nu + 1) theta) / sin(theta), the trigonometric form of lambda(p^nu).

    At theta = 0 or pi the quotient is replaced by its limit
    (nu + 1) cos(theta)^nu.

    """
    _validate_nu(nu)
    theta = np.asarray(theta, dtype=float)
    s = np.sin(theta)
    degenerate = np.abs(s) < SIN_EPSILON
    safe = np.where(degenerate, 1.0, s)
    value = np.where(
        degenerate,
        (nu + 1) * np.sign(np.cos(theta)) ** nu,
        np.sin((nu + 1) * theta) / safe,
    )
    return _unwrap(value)


def hecke_recurrence_exact(a_p, nu, p, weight):
    """
    Exact a(p^nu) from the integer a(p) at weight k:

        a(p^(nu + 1)) = a(p) a(p^nu) - p^(k - 1) a(p^(nu - 1))

    """
    _validate_nu(nu)
    if nu == 0:
        return 1
    scale = p ** (weight - 1)
    prev, cur = 1, int(a_p)
    for _ in range(nu - 1):
        prev, cur = cur, a_p * cur - scale * prev
    return cur


def _unwrap(value):
    return float(value) if np.ndim(value) == 0 else value


def _validate_nu(nu):
    if isinstance(nu, bool) or not isinstance(nu, (int, np.integer)):
        raise TypeError(f"nu must be integer type, got {type(nu).__name__}")
    if nu < 0:
        raise ValueError("nu must be nonnegative")
