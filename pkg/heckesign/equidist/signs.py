"""
Sign densities of products lambda_1(p^nu) lambda_2(p^nu).

Two experiments are covered:

 * a fixed prime p with nu running over 1..x
   (sign_product_proportion_nu), whose positive and negative
   proportions tend to 1/2 when the orbit of the two Sato-Tate angles
   is equidistributed modulo 1
 * a fixed odd nu with p running over the primes up to X
   (prime_sign_density), whose classes have natural density 1/2, 1/2
   and 0 under the pair Sato-Tate law

"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from heckesign.angles import angle, angles_of
from heckesign.errors import DegenerateAngleError, PathDisagreementError, SourceExhaustedError
from heckesign.measures import product_measure, sign_interval_union, validate_odd_nu
from heckesign.newforms.hecke import SIN_EPSILON, hecke_recurrence, sin_quotient
from heckesign.tally import density_trace


logger = logging.getLogger(__name__)

# |product| below this is counted in the zero class
ZERO_THRESHOLD = 1e-12

# nu range on which the recurrence and sin-quotient paths are compared
PATH_CHECK_NU = 200
PATH_TOLERANCE = 1e-9

_CHUNK = 1 << 20


@dataclass
class SignDensityReport:
    """
    Counts and densities of the sign classes of a product over a range.

    The denominator is the number of terms classified (x for nu-ranges,
    the count of primes p <= X not dividing the levels for prime ranges),
    and positive + negative + zero == denominator always holds.

    Any further statistics an experiment computes go in extras.
    """
    experiment: str
    params: dict
    positive: int
    negative: int
    zero: int
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if min(self.positive, self.negative, self.zero) < 0:
            raise ValueError("class counts must be nonnegative")

    @property
    def denominator(self):
        return self.positive + self.negative + self.zero

    @property
    def densities(self):
        n = self.denominator
        if not n:
            return {"positive": float("nan"), "negative": float("nan"), "zero": float("nan")}
        return {"positive": self.positive / n, "negative": self.negative / n, "zero": self.zero / n}

    @property
    def closed_densities(self):
        """
        Densities of the closed classes (product >= 0, product <= 0).
        """
        n = self.denominator
        if not n:
            return {"nonnegative": float("nan"), "nonpositive": float("nan")}
        return {
            "nonnegative": (self.positive + self.zero) / n,
            "nonpositive": (self.negative + self.zero) / n,
        }

    @property
    def nonzero_densities(self):
        """
        Positive and negative proportions among the nonzero terms only.
        """
        n = self.positive + self.negative
        if not n:
            return {"positive": float("nan"), "negative": float("nan")}
        return {"positive": self.positive / n, "negative": self.negative / n}

    def as_dict(self):
        return {
            "experiment": self.experiment,
            "params": self.params,
            "counts": {
                "positive": self.positive,
                "negative": self.negative,
                "zero": self.zero,
                "denominator": self.denominator,
            },
            "densities": self.densities,
            "closed_densities": self.closed_densities,
            "nonzero_densities": self.nonzero_densities,
            "extras": self.extras,
        }


def classify(values, threshold=ZERO_THRESHOLD):
    """
    Signs of values as an int8 array, with |value| < threshold mapped to 0.
    """
    values = np.asarray(values, dtype=float)
    return np.where(values >= threshold, 1, np.where(values <= -threshold, -1, 0)).astype(np.int8)


def class_counts(signs):
    """
    (positive, negative, zero) counts of a sign array.
    """
    signs = np.asarray(signs)
    return (
        int(np.count_nonzero(signs > 0)),
        int(np.count_nonzero(signs < 0)),
        int(np.count_nonzero(signs == 0)),
    )


def sign_changes(signs):
    """
    Number of sign changes between consecutive nonzero entries.

    Examples
    --------

    >>> sign_changes([1, 0, -1, -1, 1, 0])
    2

    """
    signs = np.asarray(signs)
    nonzero = signs[signs != 0]
    return int(np.count_nonzero(nonzero[1:] != nonzero[:-1]))


def shared_primes(t1, t2, bound):
    """
    Primes p <= bound present in both tables, with the aligned lambda values.

    Each table omits the primes dividing its own level, so the
    intersection is exactly the primes not dividing N1 N2.

    Raises
    ------

    SourceExhaustedError if either table stops short of bound

    """
    for table in (t1, t2):
        if table.bound < bound:
            raise SourceExhaustedError(
                f"the {table.spec.label} table covers primes up to {table.bound}, not {bound}"
            )
    primes, i1, i2 = np.intersect1d(t1.primes, t2.primes, assume_unique=True, return_indices=True)
    keep = primes <= bound
    return primes[keep], t1.lambdas[i1[keep]], t2.lambdas[i2[keep]]


def sign_product_proportion_nu(t1, t2, p, x, threshold=ZERO_THRESHOLD):
    """
    Sign classes of lambda_1(p^nu) lambda_2(p^nu) for nu = 1..x at a fixed prime.

    Each lambda_i(p^nu) is evaluated in O(1) as
    sin((nu + 1) theta_i) / sin(theta_i). The report carries both the
    densities over x and those among the nonzero terms only, and the
    largest disagreement between the recurrence and the sin-quotient
    for nu <= 200.

    Parameters
    ----------

    t1, t2 : EigenvalueTable, both containing p
    p : prime not dividing either level
    x : positive integer, number of exponents
    threshold : products with |value| below this count as zero

    Raises
    ------

    RamifiedPrimeError if p divides a level
    DegenerateAngleError if either angle is 0 or pi
    PathDisagreementError if the recurrence and the sin-quotient differ
    by more than 1e-9

    """
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"x must be integer type, got {type(x).__name__}")
    if x < 1:
        raise ValueError("x must be positive")

    lambdas = (t1.lambda_at(p), t2.lambda_at(p))
    thetas = tuple(angle(lam) for lam in lambdas)
    for table, theta in zip((t1, t2), thetas):
        if abs(math.sin(theta)) < SIN_EPSILON:
            raise DegenerateAngleError(f"theta_{p} of {table.spec.label} is {theta!r}")

    positive = negative = zero = 0
    for start in range(1, x + 1, _CHUNK):
        nu = np.arange(start, min(start + _CHUNK, x + 1), dtype=float)
        s1, s2 = (np.sin((nu + 1) * theta) / math.sin(theta) for theta in thetas)
        pos, neg, nil = class_counts(classify(s1 * s2, threshold))
        positive, negative, zero = positive + pos, negative + neg, zero + nil

    deviation = max(_path_deviation(lam, theta, min(x, PATH_CHECK_NU)) for lam, theta in zip(lambdas, thetas))
    _check_paths(deviation, f"p={p}")

    report = SignDensityReport(
        experiment="nu-density",
        params={
            "forms": [t1.spec.label, t2.spec.label],
            "p": int(p),
            "x": x,
            "thetas": list(thetas),
            "zero_threshold": threshold,
        },
        positive=positive,
        negative=negative,
        zero=zero,
        extras={"path_deviation": deviation},
    )
    logger.info("nu-density p=%d x=%d: %s", p, x, report.densities)
    return report


def _path_deviation(lam, theta, nu_max):
    """
    max over nu <= nu_max of |recurrence - sin-quotient| / max(1, |value|).
    """
    worst = 0.0
    prev, cur = 1.0, lam
    for nu in range(1, nu_max + 1):
        trig = sin_quotient(theta, nu)
        worst = max(worst, abs(cur - trig) / max(1.0, abs(cur)))
        prev, cur = cur, lam * cur - prev
    return worst


def _prime_path_deviation(lams, nu):
    """
    max over the primes of |recurrence - sin-quotient| / max(1, |value|) at a fixed nu.
    """
    thetas = angles_of(lams)
    keep = np.abs(np.sin(thetas)) >= SIN_EPSILON
    if not keep.any():
        return 0.0
    recurrence = hecke_recurrence(lams[keep], nu)
    trig = sin_quotient(thetas[keep], nu)
    return float(np.max(np.abs(recurrence - trig) / np.maximum(1.0, np.abs(recurrence))))


def _check_paths(deviation, where):
    if not deviation <= PATH_TOLERANCE:
        raise PathDisagreementError(
            f"recurrence and sin-quotient differ by {deviation:.3g} at {where} (tolerance {PATH_TOLERANCE})"
        )


def prime_sign_density(t1, t2, nu, X, threshold=ZERO_THRESHOLD, checkpoints=None):
    """
    Sign classes of lambda_1(p^nu) lambda_2(p^nu) over primes p <= X, p not dividing N1 N2.

    The values are evaluated by the Hecke recurrence. Besides the class
    counts the report records:

     * sign_changes   changes of sign between consecutive nonzero products
     * quadrants      primes with (theta_1, theta_2) in each of the four
                      products of sign unions, with the expected count
                      from the pair Sato-Tate measure
     * integer_crosscheck
                      for nu = 1, primes where the sign of the exact
                      product a_1(p) a_2(p) disagrees with the floating
                      classification (always 0 for a sound table)
     * trace          densities at the first 10, 100, ... primes
     * path_deviation largest relative gap between the recurrence and
                      the sin-quotient over the primes

    Parameters
    ----------

    t1, t2 : EigenvalueTable covering primes up to X
    nu : odd positive integer
    X : positive integer
    threshold : products with |value| below this count as zero
    checkpoints : prefix lengths for the trace (default powers of 10)

    Raises
    ------

    PathDisagreementError if the recurrence and the sin-quotient differ
    by more than 1e-9 at some prime

    """
    validate_odd_nu(nu)
    if isinstance(X, bool) or not isinstance(X, int):
        raise TypeError(f"X must be integer type, got {type(X).__name__}")
    if X < 1:
        raise ValueError("X must be positive")

    primes, lam1, lam2 = shared_primes(t1, t2, X)
    signs = classify(hecke_recurrence(lam1, nu) * hecke_recurrence(lam2, nu), threshold)
    deviation = max(_prime_path_deviation(lam, nu) for lam in (lam1, lam2))
    _check_paths(deviation, f"nu={nu}")
    positive, negative, zero = class_counts(signs)

    extras = {
        "sign_changes": sign_changes(signs),
        "path_deviation": deviation,
        "quadrants": _quadrant_counts(lam1, lam2, nu),
    }
    if nu == 1:
        extras["integer_crosscheck"] = _integer_crosscheck(t1, t2, primes, signs)
    if checkpoints is None:
        checkpoints = [10 ** j for j in range(1, 1 + int(math.log10(max(1, len(primes)))))]
    extras["trace"] = [list(row) for row in density_trace(signs.tolist(), checkpoints)]

    report = SignDensityReport(
        experiment="prime-density",
        params={
            "forms": [t1.spec.label, t2.spec.label],
            "nu": nu,
            "X": X,
            "excluded_levels": [t1.spec.level, t2.spec.level],
            "zero_threshold": threshold,
        },
        positive=positive,
        negative=negative,
        zero=zero,
        extras=extras,
    )
    logger.info("prime-density nu=%d X=%d over %d primes: %s", nu, X, len(primes), report.densities)
    return report


def prime_sign_sequence(t1, t2, nu, X, threshold=ZERO_THRESHOLD):
    """
    (p, sign) pairs of lambda_1(p^nu) lambda_2(p^nu) over the shared primes p <= X.

    Suitable as input to an 'indexed' SignTally.
    """
    validate_odd_nu(nu)
    primes, lam1, lam2 = shared_primes(t1, t2, X)
    signs = classify(hecke_recurrence(lam1, nu) * hecke_recurrence(lam2, nu), threshold)
    return list(zip(primes.tolist(), signs.tolist()))


def _quadrant_counts(lam1, lam2, nu):
    theta_1, theta_2 = angles_of(lam1), angles_of(lam2)
    unions = {"+": sign_interval_union(nu, "+"), "-": sign_interval_union(nu, "-")}
    quadrants = {}
    for s1 in "+-":
        in_1 = unions[s1].contains_array(theta_1)
        for s2 in "+-":
            in_2 = unions[s2].contains_array(theta_2)
            quadrants[s1 + s2] = {
                "count": int(np.count_nonzero(in_1 & in_2)),
                "expected": len(theta_1) * product_measure(unions[s1], unions[s2]),
            }
    return quadrants


def _integer_crosscheck(t1, t2, primes, signs):
    mismatches = 0
    for p, sign in zip(primes.tolist(), signs.tolist()):
        product = t1.raw_at(p) * t2.raw_at(p)
        exact = (product > 0) - (product < 0)
        if exact != sign:
            mismatches += 1
    if mismatches:
        logger.warning("%d primes disagree with the exact a_p sign", mismatches)
    return mismatches
