"""
Truncated power series in q with exact integer coefficients.

Coefficients are held in numpy object arrays of Python integers, so
products and powers are exact at any size and cannot wrap around.

"""
import logging
import operator
from itertools import count

import numpy as np


logger = logging.getLogger(__name__)

# largest index of the Ramanujan tau table built on demand
DELTA_TABLE_BOUND = 10 ** 5


class QSeries:
    """
    Power series sum(c_n q^n, 0 <= n <= bound) modulo q^(bound + 1).

    Parameters
    ----------

    coeffs : iterable of integers, c_0, c_1, ... (missing trailing
        coefficients up to bound are zero, extra ones are dropped)
    bound : integer >= 0, the truncation order (defaults to the
        index of the last coefficient given)

    Complexity
    ----------

    Product:      O(s * bound) where s is the number of nonzero
                  coefficients of the sparser factor
    Memory usage: O(bound)

    Examples
    --------

    >>> from heckesign.qseries import QSeries
    >>> (QSeries([1, 1], 2) * QSeries([1, -1], 2)).coefficients()
    [1, 0, -1]

    """
    def __init__(self, coeffs, bound=None):
        coeffs = [operator.index(c) for c in coeffs]
        if bound is None:
            bound = len(coeffs) - 1
        self.bound = _validate_bound(bound)
        self._coeffs = np.zeros(self.bound + 1, dtype=object)
        for n, c in enumerate(coeffs[: self.bound + 1]):
            self._coeffs[n] = c

    @classmethod
    def _from_array(cls, array):
        series = cls.__new__(cls)
        series.bound = len(array) - 1
        series._coeffs = array
        return series

    @classmethod
    def one(cls, bound):
        return cls([1], bound)

    @classmethod
    def from_terms(cls, terms, bound):
        """
        Build a series from a mapping {exponent: coefficient}.

        Exponents beyond bound are ignored.
        """
        series = cls([], bound)
        for n, c in terms.items():
            if 0 <= n <= bound:
                series._coeffs[n] += operator.index(c)
        return series

    def __repr__(self):
        return f"QSeries(bound={self.bound}, nonzero={self.nonzero_count()})"

    def __len__(self):
        return self.bound + 1

    def __getitem__(self, n):
        return self._coeffs[n]

    def __iter__(self):
        return iter(self.coefficients())

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.bound == other.bound and self.coefficients() == other.coefficients()

    def coefficients(self):
        """
        List of the coefficients c_0, ..., c_bound.
        """
        return [int(c) for c in self._coeffs]

    def nonzero_count(self):
        return len(np.flatnonzero(self._coeffs))

    def __neg__(self):
        return QSeries._from_array(-self._coeffs)

    def __add__(self, other):
        _check_bounds(self, other)
        return QSeries._from_array(self._coeffs + other._coeffs)

    def __sub__(self, other):
        _check_bounds(self, other)
        return QSeries._from_array(self._coeffs - other._coeffs)

    def __mul__(self, other):
        return multiply(self, other)

    def __pow__(self, exponent):
        """
        Raise to a nonnegative integer power by binary exponentiation.
        """
        exponent = operator.index(exponent)
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        result = QSeries.one(self.bound)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def shift(self, k):
        """
        Multiply by q^k, truncating at the same bound.
        """
        array = np.zeros(self.bound + 1, dtype=object)
        if k <= self.bound:
            array[k:] = self._coeffs[: self.bound + 1 - k]
        return QSeries._from_array(array)


def multiply(a, b):
    """
    Cauchy product of two series with equal bounds.

    The loop runs over the nonzero coefficients of the sparser factor,
    adding a shifted multiple of the other factor each time.

    """
    _check_bounds(a, b)
    if a.nonzero_count() > b.nonzero_count():
        a, b = b, a
    bound = a.bound
    out = np.zeros(bound + 1, dtype=object)
    for i in np.flatnonzero(a._coeffs):
        out[i:] += a._coeffs[i] * b._coeffs[: bound + 1 - i]
    return QSeries._from_array(out)


def eta_product(bound):
    """
    prod(1 - q^n, n >= 1) to the given bound.

    Uses Euler's pentagonal number theorem: the coefficient of
    q^(m(3m - 1)/2) is (-1)^m for every integer m and all others vanish.

    """
    _validate_bound(bound)
    terms = {0: 1}
    for m in count(1):
        low = m * (3 * m - 1) // 2
        if low > bound:
            break
        sign = -1 if m % 2 else 1
        terms[low] = sign
        terms[low + m] = sign
    return QSeries.from_terms(terms, bound)


def eta_cubed(bound):
    """
    prod(1 - q^n, n >= 1)^3 to the given bound.

    By Jacobi's identity the coefficient of q^(m(m + 1)/2) is
    (-1)^m (2m + 1) for m >= 0 and all others vanish.

    """
    _validate_bound(bound)
    terms = {}
    for m in count(0):
        n = m * (m + 1) // 2
        if n > bound:
            break
        terms[n] = (-1) ** m * (2 * m + 1)
    return QSeries.from_terms(terms, bound)


def eta_power_24_delta(bound):
    """
    The discriminant form Delta = q prod(1 - q^n)^24 to the given bound.

    The coefficient of q^n is Ramanujan's tau(n).

    prod(1 - q^n)^24 is computed as the eighth power of the sparse
    Jacobi series for prod(1 - q^n)^3. Each factor is multiplied in
    separately because squaring a dense intermediate would cost
    O(bound^2) instead of O(sqrt(bound) * bound).

    Parameters
    ----------

    bound : integer >= 1, largest index n for which tau(n) is wanted

    Examples
    --------

    >>> delta = eta_power_24_delta(6)
    >>> delta.coefficients()
    [0, 1, -24, 252, -1472, 4830, -6048]

    """
    if _validate_bound(bound) < 1:
        raise ValueError("bound must be at least 1")
    factor = eta_cubed(bound - 1)
    power = factor
    for _ in range(7):
        power = multiply(factor, power)
    logger.debug("built tau table to bound %d", bound)
    return _pad(power, bound).shift(1)


def ramanujan_tau(bound):
    """
    List tau(0..bound) with tau(0) = 0.
    """
    return eta_power_24_delta(bound).coefficients()


def _pad(series, bound):
    array = np.zeros(bound + 1, dtype=object)
    array[: series.bound + 1] = series._coeffs[: bound + 1]
    return QSeries._from_array(array)


def _check_bounds(a, b):
    if a.bound != b.bound:
        raise ValueError(f"series bounds differ: {a.bound} != {b.bound}")


def _validate_bound(bound):
    """
    Check that bound is a nonnegative integer.
    """
    if isinstance(bound, bool) or not isinstance(bound, (int, np.integer)):
        raise TypeError(f"bound must be integer type, got {type(bound).__name__}")
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    return int(bound)
