import numpy as np


class PrimeSieve:
    """
    Sieve of Eratosthenes over [0, limit].

    The table is a numpy boolean array where is_prime[n] is true
    exactly when n is prime. A built sieve is never modified, so a
    single instance can be shared between readers.

    Parameters
    ----------

    limit : integer >= 2, largest integer covered by the table

    Complexity
    ----------

    Build time:   O(limit log log limit)
    Memory usage: O(limit) bytes

    Examples
    --------

    >>> from heckesign.arith import sieve
    >>> s = sieve(10)
    >>> list(s)
    [2, 3, 5, 7]
    >>> sieve(100).prime_pi(100)
    25

    """
    def __init__(self, limit):
        self.limit = _validate_limit(limit)

        is_prime = np.ones(self.limit + 1, dtype=bool)
        is_prime[:2] = False
        for i in range(2, int(self.limit ** 0.5) + 1):
            if is_prime[i]:
                is_prime[i * i :: i] = False

        is_prime.flags.writeable = False
        self.is_prime = is_prime
        self._primes = np.flatnonzero(is_prime)
        self._primes.flags.writeable = False

    def __repr__(self):
        return f"PrimeSieve(limit={self.limit})"

    def __iter__(self):
        return (int(p) for p in self._primes)

    def __len__(self):
        return len(self._primes)

    def __contains__(self, n):
        return 0 <= n <= self.limit and bool(self.is_prime[n])

    @property
    def primes(self):
        """
        Read-only int64 array of all primes <= limit, ascending.
        """
        return self._primes

    def primes_up_to(self, x):
        """
        Array of primes <= x (x may not exceed the sieve limit).
        """
        if x > self.limit:
            raise ValueError(f"x={x} exceeds sieve limit {self.limit}")
        return self._primes[: self.prime_pi(x)]

    def prime_pi(self, x):
        """
        Prime-counting function pi(x) for x <= limit.
        """
        if x > self.limit:
            raise ValueError(f"x={x} exceeds sieve limit {self.limit}")
        return int(np.searchsorted(self._primes, x, side="right"))


def sieve(limit):
    """
    Build a PrimeSieve covering all integers up to limit.
    """
    return PrimeSieve(limit)


def _validate_limit(limit):
    """
    Check that limit is an integer of at least 2.
    """
    if isinstance(limit, bool) or not isinstance(limit, (int, np.integer)):
        raise TypeError(f"limit must be integer type, got {type(limit).__name__}")
    if limit < 2:
        raise ValueError("limit must be at least 2")
    return int(limit)
