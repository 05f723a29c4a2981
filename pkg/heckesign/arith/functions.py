"""
Multiplicative functions and quadratic symbols on the integers.

"""


def factorize(n):
    """
    Factorize a positive integer by trial division.

    Returns an ascending list of (prime, exponent) pairs; factorize(1)
    is the empty list.

    """
    _validate_positive(n, "n")
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return factors


def mobius(n):
    """
    Moebius function mu(n).

    mu(n) = (-1)^r if n is a product of r distinct primes and
    mu(n) = 0 if n has a square factor.

    Examples
    --------

    >>> mobius(1), mobius(4), mobius(30)
    (1, 0, -1)

    """
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def divisors(n):
    """
    All positive divisors of n in ascending order.

    >>> divisors(12)
    [1, 2, 3, 4, 6, 12]

    """
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return sorted(divs)


def is_squarefree(n):
    return all(e == 1 for _, e in factorize(n))


def kronecker(a, n):
    """
    Kronecker symbol (a / n).

    The symbol is the Jacobi symbol for odd positive n, extended
    to every integer n by the standard conventions:

     * (a / 0) = 1 if a = +-1, else 0
     * (a / -1) = -1 if a < 0, else 1
     * (a / 2) = 0 if a is even, 1 if a = +-1 mod 8, -1 if a = +-3 mod 8

    and complete multiplicativity in n.

    Parameters
    ----------

    a : integer
    n : integer

    Complexity
    ----------

    O(log max(|a|, |n|)) using quadratic reciprocity

    Examples
    --------

    >>> kronecker(2, 15)
    1
    >>> kronecker(-4, 5)
    1
    >>> kronecker(-1, 3)
    -1

    """
    if n == 0:
        return 1 if a in (1, -1) else 0

    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1

    # pull out the factors of two from n using the (a / 2) rule
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result

    # n is now odd and positive: Jacobi symbol by reciprocity
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _validate_positive(n, name):
    """
    Check that n is a positive integer.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be integer type, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"{name} must be positive")
    return n
