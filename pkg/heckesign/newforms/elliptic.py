"""
Weight-2 eigenvalues from point counts on elliptic curves.

For a curve with good reduction at p, a_p = p + 1 - #E(F_p) is the
p-th Fourier coefficient of the attached weight-2 newform.

"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from heckesign.arith import factorize
from heckesign.errors import BadReductionError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EllipticCurve:
    """
    Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
    """
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    @property
    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self):
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.coefficients
        return (
            a1 ** 2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 ** 2 - a4 ** 2
        )

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6

    def has_good_reduction(self, p):
        return self.discriminant % p != 0

    def bad_primes(self):
        return [p for p, _ in factorize(abs(self.discriminant))]


def ec_ap(curve, p):
    """
    Trace of Frobenius a_p = p + 1 - #E(F_p) at a prime of good reduction.

    The count includes the point at infinity. For odd p the equation is
    rewritten as (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6, so each
    x contributes 1 + (f(x) / p) points and a_p = -sum((f(x) / p)).
    The Legendre symbols are read from a table of squares mod p.

    Parameters
    ----------

    curve : EllipticCurve
    p : prime integer not dividing the discriminant of the model

    Complexity
    ----------

    Time:         O(p) vectorised
    Memory usage: O(p)

    Examples
    --------

    >>> ec11 = EllipticCurve(0, -1, 1, -10, -20)
    >>> ec_ap(ec11, 2), ec_ap(ec11, 3)
    (-2, -1)

    """
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise TypeError(f"p must be integer type, got {type(p).__name__}")
    p = int(p)
    if p < 2 or factorize(p) != [(p, 1)]:
        raise ValueError(f"p={p} is not prime")
    if not curve.has_good_reduction(p):
        raise BadReductionError(f"curve {curve.coefficients} has bad reduction at p={p}")
    return _trace_of_frobenius(curve, p)


def count_points(curve, p):
    """
    Number of points of the reduction of curve over F_p, including infinity.
    """
    return p + 1 - ec_ap(curve, p)


def ec_ap_many(curve, primes, workers=1):
    """
    a_p for each prime in primes, in the order given.

    With workers > 1 the primes are split over a process pool; map()
    keeps the results in input order so output does not depend on
    scheduling.

    """
    primes = [int(p) for p in primes]
    for p in primes:
        if not curve.has_good_reduction(p):
            raise BadReductionError(f"curve {curve.coefficients} has bad reduction at p={p}")

    count = partial(_trace_of_frobenius, curve)
    if workers <= 1 or len(primes) < 2:
        return [count(p) for p in primes]

    chunksize = max(1, len(primes) // (8 * workers))
    logger.debug("counting points at %d primes on %d workers", len(primes), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(count, primes, chunksize=chunksize))


def hasse_bound(p):
    return 2 * math.sqrt(p)


def _trace_of_frobenius(curve, p):
    if p == 2:
        return _trace_by_enumeration(curve, p)

    x = np.arange(p, dtype=np.int64)
    legendre = np.full(p, -1, dtype=np.int64)
    legendre[(x * x) % p] = 1
    legendre[0] = 0

    b2, b4, b6 = curve.b2 % p, (2 * curve.b4) % p, curve.b6 % p
    f = (4 * x + b2) % p
    f = (f * x + b4) % p
    f = (f * x + b6) % p
    return -int(legendre[f].sum())


def _trace_by_enumeration(curve, p):
    a1, a2, a3, a4, a6 = curve.coefficients
    affine = sum(
        1
        for x in range(p)
        for y in range(p)
        if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % p == 0
    )
    return p - affine
