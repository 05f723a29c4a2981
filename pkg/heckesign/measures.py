"""
Closed forms for the Sato-Tate measure and the sets it is evaluated on.

The Sato-Tate measure on [0, pi] is (2/pi) sin^2(theta) d(theta), with
cumulative distribution function

    F(theta) = (theta - sin(theta) cos(theta)) / pi.

Its 2-product on [0, pi]^2 is the product measure of two copies.

"""
import math

import numpy as np

from heckesign.structures.intervals import IntervalUnion


_DOMAIN_TOLERANCE = 1e-12


def st_cdf(theta):
    """
    Sato-Tate cumulative distribution function on [0, pi].

    Accepts a scalar or a numpy array.

    Examples
    --------

    >>> st_cdf(0.0), st_cdf(math.pi / 2), st_cdf(math.pi)
    (0.0, 0.5, 1.0)

    """
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < -_DOMAIN_TOLERANCE) or np.any(theta > math.pi + _DOMAIN_TOLERANCE):
        raise ValueError("theta must lie in [0, pi]")
    theta = np.clip(theta, 0.0, math.pi)
    value = np.clip((theta - np.sin(theta) * np.cos(theta)) / math.pi, 0.0, 1.0)
    return float(value) if value.ndim == 0 else value


def st_inverse_cdf(u, iterations=64):
    """
    Inverse of st_cdf by vectorised bisection on [0, pi].
    """
    u = np.asarray(u, dtype=float)
    if np.any(u < 0) or np.any(u > 1):
        raise ValueError("u must lie in [0, 1]")
    lo = np.zeros_like(u)
    hi = np.full_like(u, math.pi)
    for _ in range(iterations):
        mid = (lo + hi) / 2
        below = (mid - np.sin(mid) * np.cos(mid)) / math.pi < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    theta = (lo + hi) / 2
    return float(theta) if theta.ndim == 0 else theta


def st_measure(union):
    """
    Sato-Tate measure of an IntervalUnion.
    """
    return math.fsum(st_cdf(b) - st_cdf(a) for a, b in union)


def product_measure(union_1, union_2):
    """
    2-product Sato-Tate measure of union_1 x union_2.

    Examples
    --------

    >>> round(product_measure(sign_interval_union(3, "+"), sign_interval_union(3, "-")), 12)
    0.25

    """
    return st_measure(union_1) * st_measure(union_2)


def st_measure_quadrature(union, panels=10 ** 6):
    """
    Midpoint-rule value of the Sato-Tate measure of a union.

    The panels are shared out evenly over the parts so that the rule is
    applied to the smooth density on each part.

    """
    if panels < len(union):
        raise ValueError("need at least one panel per interval")
    per_part = panels // max(1, len(union))
    total = []
    for a, b in union:
        h = (b - a) / per_part
        mid = a + h * (np.arange(per_part) + 0.5)
        total.append(np.sum(np.sin(mid) ** 2) * h)
    return 2 / math.pi * math.fsum(total)


def sign_interval_union(nu, sign):
    """
    The set of theta in (0, pi) where sin((nu + 1) theta) has the given sign.

    For odd nu and h = pi/(nu + 1):

        A_{>0} = union over j = 1..(nu + 1)/2 of ((2j - 2) h, (2j - 1) h)
        A_{<0} = union over j = 1..(nu + 1)/2 of ((2j - 1) h, 2j h)

    Parameters
    ----------

    nu : odd positive integer
    sign : "+" or "-"

    Examples
    --------

    >>> sign_interval_union(1, "+").parts
    ((0.0, 1.5707963267948966),)

    """
    return epsilon_interval_union(nu, 0.0, primed=_validate_sign(sign) == "-")


def epsilon_interval_union(nu, eps, primed=False):
    """
    The set where sin((nu + 1) theta) > eps (or < -eps when primed).

    With s = arcsin(eps) and h = pi/(nu + 1):

        I_eps  = union of ((2j - 2) pi + s, (2j - 1) pi - s) / (nu + 1)
        I'_eps = union of ((2j - 1) pi + s, 2j pi - s) / (nu + 1)

    for j = 1..(nu + 1)/2. eps = 0 gives sign_interval_union.

    """
    validate_odd_nu(nu)
    if not 0 <= eps < 1:
        raise ValueError(f"eps must lie in [0, 1), got {eps!r}")
    s = math.asin(eps)
    offset = 1 if primed else 0
    parts = []
    for j in range(1, (nu + 1) // 2 + 1):
        a = ((2 * j - 2 + offset) * math.pi + s) / (nu + 1)
        b = ((2 * j - 1 + offset) * math.pi - s) / (nu + 1)
        parts.append((a, b))
    return IntervalUnion(tuple(parts))


def sin_box_measure(a, b):
    """
    Lebesgue measure of {u in [0, 1) : sin(2 pi u) in [a, b]}.

    sin(2 pi u) is monotone on the four quarter periods; on each the
    preimage of [a, b] is an interval whose length follows from
    arcsin of the clipped endpoints.

    Examples
    --------

    >>> sin_box_measure(-1, 1), sin_box_measure(0, 1)
    (1.0, 0.5)

    """
    if not -1 <= a <= b <= 1:
        raise ValueError(f"need -1 <= a <= b <= 1, got a={a!r}, b={b!r}")
    total = []
    # quarters: rising 0..1, falling 1..0, falling 0..-1, rising -1..0
    for low, high in ((0.0, 1.0), (0.0, 1.0), (-1.0, 0.0), (-1.0, 0.0)):
        lo, hi = max(a, low), min(b, high)
        if lo < hi:
            total.append((math.asin(hi) - math.asin(lo)) / (2 * math.pi))
    return math.fsum(total)


def arcsin_box_measure(a, b):
    """
    The one-factor arcsin difference (arcsin(b) - arcsin(a)) / pi.
    """
    if not -1 <= a <= b <= 1:
        raise ValueError(f"need -1 <= a <= b <= 1, got a={a!r}, b={b!r}")
    return (math.asin(b) - math.asin(a)) / math.pi


def _validate_sign(sign):
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return sign


def validate_odd_nu(nu):
    if isinstance(nu, bool) or not isinstance(nu, int):
        raise TypeError(f"nu must be integer type, got {type(nu).__name__}")
    if nu < 1 or nu % 2 == 0:
        raise ValueError(f"nu must be an odd positive integer, got {nu}")
    return nu
