"""
Coefficient relations between a half-integral weight eigenform and its Shimura lift.

For a form of weight k + 1/2, level 4N and real character chi with
a(t) = 1, the lift of weight 2k has coefficients

    A(n) = sum over d | n of chi_tN(d) d^(k - 1) a(t n^2 / d^2)

where chi_tN(d) = chi(d) kronecker((-1)^k N^2 t, d). Mobius inversion
gives back

    a(t n^2) = sum over d | n of mu(d) chi_tN(d) d^(k - 1) A(n / d)

and at a prime power, with lambda the normalized eigenvalues of the lift,

    a(t p^(2 nu)) / p^(nu (k - 1/2)) = lambda(p^nu) - chi_tN(p) / sqrt(p) lambda(p^(nu - 1)).

Writing lambda(p) = 2 cos(theta) the sign of the left side is the sign of

    sin((nu + 1) theta) - chi_tN(p) / sqrt(p) sin(nu theta).

"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from heckesign.angles import angle, angles_of
from heckesign.arith import divisors, factorize, kronecker, mobius
from heckesign.equidist.signs import (
    ZERO_THRESHOLD,
    SignDensityReport,
    class_counts,
    classify,
    shared_primes,
    sign_changes,
)
from heckesign.errors import DegenerateAngleError, MissingCoefficientError, RamifiedPrimeError
from heckesign.measures import epsilon_interval_union, product_measure, validate_odd_nu
from heckesign.newforms.hecke import SIN_EPSILON, hecke_recurrence


logger = logging.getLogger(__name__)

# sign-predicate and normalized value are compared where |value| >= this
PREDICATE_MARGIN = 1e-10

FLAVORS = ("forward", "halfint")


class CoefficientSeries:
    """
    Finitely supported coefficients n -> value.

    Parameters
    ----------

    flavor : 'forward' for lift coefficients A(n), or 'halfint' for
        a(t n^2) keyed by n
    values : mapping from positive integers to numbers
    bound : optional declared support bound (default: largest key)

    Values are kept as given, so integer or Fraction inputs stay exact
    through shimura_forward and mobius_inverse.

    Examples
    --------

    >>> a = CoefficientSeries("halfint", {1: 1, 2: 5})
    >>> a[2], 3 in a
    (5, False)

    """
    def __init__(self, flavor, values, bound=None):
        if flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}, got {flavor!r}")
        self.flavor = flavor
        self.values = dict(values)
        if any(isinstance(n, bool) or not isinstance(n, int) or n < 1 for n in self.values):
            raise ValueError("series indices must be positive integers")
        self.bound = bound if bound is not None else max(self.values, default=0)
        if self.values and max(self.values) > self.bound:
            raise ValueError(f"index {max(self.values)} exceeds the declared bound {self.bound}")

    def __repr__(self):
        return f"CoefficientSeries(flavor='{self.flavor}', bound={self.bound}, terms={len(self)})"

    def __len__(self):
        return len(self.values)

    def __contains__(self, n):
        return n in self.values

    def __getitem__(self, n):
        try:
            return self.values[n]
        except KeyError:
            raise MissingCoefficientError(f"{self.flavor} series has no coefficient at {n}") from None

    def __eq__(self, other):
        if not isinstance(other, CoefficientSeries):
            return NotImplemented
        return self.flavor == other.flavor and self.values == other.values


def chi_tN(spec, d):
    """
    chi(d) kronecker((-1)^k N^2 t, d), the character twisting the Shimura relations.

    Examples
    --------

    >>> from heckesign.halfint.spec import HalfIntegralSpec, trivial_character
    >>> from heckesign.newforms import EC11
    >>> spec = HalfIntegralSpec("s", k=1, level=1, t=1, chi=trivial_character(1), underlying=EC11)
    >>> chi_tN(spec, 1), chi_tN(spec, 3), chi_tN(spec, 4)
    (1, -1, 0)

    """
    value = spec.chi(d)
    if not value:
        return 0
    return value * kronecker((-1) ** spec.k * spec.level ** 2 * spec.t, d)


def shimura_forward(spec, a, n):
    """
    A(n) = sum over d | n of chi_tN(d) d^(k - 1) a(t (n/d)^2).

    Parameters
    ----------

    spec : HalfIntegralSpec
    a : CoefficientSeries of flavor 'halfint'
    n : positive integer

    Raises
    ------

    MissingCoefficientError if a lacks a(t m^2) for some m | n

    """
    _check_flavor(a, "halfint")
    return sum(chi_tN(spec, d) * d ** (spec.k - 1) * a[n // d] for d in divisors(n))


def mobius_inverse(spec, A, n):
    """
    a(t n^2) = sum over d | n of mu(d) chi_tN(d) d^(k - 1) A(n / d).

    Parameters
    ----------

    spec : HalfIntegralSpec
    A : CoefficientSeries of flavor 'forward'
    n : positive integer

    Raises
    ------

    MissingCoefficientError if A lacks A(m) for some m | n

    """
    _check_flavor(A, "forward")
    total = 0
    for d in divisors(n):
        mu = mobius(d)
        if mu:
            total += mu * chi_tN(spec, d) * d ** (spec.k - 1) * A[n // d]
    return total


def forward_series(spec, a, bound=None):
    """
    The lift coefficients A(n), n <= bound, of a half-integral series.
    """
    bound = a.bound if bound is None else bound
    return CoefficientSeries("forward", {n: shimura_forward(spec, a, n) for n in range(1, bound + 1)}, bound)


def inverse_series(spec, A, bound=None):
    """
    The coefficients a(t n^2), n <= bound, recovered from lift coefficients.
    """
    bound = A.bound if bound is None else bound
    return CoefficientSeries("halfint", {n: mobius_inverse(spec, A, n) for n in range(1, bound + 1)}, bound)


def forward_series_from_table(spec, table, bound):
    """
    Exact lift coefficients A(n) = a_f(n) for n <= bound from an eigenvalue table.

    a_f is multiplicative and a_f(p^j) follows from the integer a_f(p) by
    the Hecke recurrence at weight 2k. Only n built from primes in the
    table are included, so n sharing a factor with the lift's level is
    absent from the series.

    """
    if table.spec != spec.underlying:
        raise ValueError(f"table is for {table.spec.label}, the lift of {spec.label} is {spec.underlying.label}")
    values = {1: 1}
    for n in range(2, bound + 1):
        coefficient = 1
        for p, j in factorize(n):
            if p not in table:
                break
            coefficient *= table.coefficient_prime_power(p, j)
        else:
            values[n] = coefficient
    return CoefficientSeries("forward", values, bound)


def synthesize_halfint_series(spec, table, bound):
    """
    Coefficients a(t n^2) synthesized from the lift table by Mobius inversion.

    Indices n having a prime factor outside the table are left out.

    """
    A = forward_series_from_table(spec, table, bound)
    values = {}
    for n in range(1, bound + 1):
        try:
            values[n] = mobius_inverse(spec, A, n)
        except MissingCoefficientError:
            continue
    return CoefficientSeries("halfint", values, bound)


def halfint_exact_normalized(spec, table, p, nu):
    """
    a(t p^(2 nu)) / p^(nu (k - 1/2)) through the exact Mobius inversion path.

    a(t p^(2 nu)) = A(p^nu) - chi_tN(p) p^(k - 1) A(p^(nu - 1)) is computed
    in integers before the single division.
    """
    _check_prime(spec, p)
    if nu < 1:
        raise ValueError("nu must be positive")
    upper = table.coefficient_prime_power(p, nu)
    lower = table.coefficient_prime_power(p, nu - 1)
    exact = upper - chi_tN(spec, p) * p ** (spec.k - 1) * lower
    return exact / p ** (nu * (spec.k - 1)) / math.sqrt(p) ** nu


def halfint_normalized(spec, table, p, nu):
    """
    lambda(p^nu) - chi_tN(p) / sqrt(p) lambda(p^(nu - 1)), the normalized a(t p^(2 nu)).

    Parameters
    ----------

    spec : HalfIntegralSpec
    table : EigenvalueTable of spec.underlying
    p : prime not dividing 2N
    nu : positive integer

    Raises
    ------

    RamifiedPrimeError if p divides 2N or the lift's level

    Examples
    --------

    >>> from heckesign.halfint import DELTA_LIFT
    >>> from heckesign.newforms import build_table
    >>> table = build_table(DELTA_LIFT.underlying, 10)
    >>> round(halfint_normalized(DELTA_LIFT, table, 5, 1) - halfint_exact_normalized(DELTA_LIFT, table, 5, 1), 9)
    0.0

    """
    _check_prime(spec, p)
    if nu < 1:
        raise ValueError("nu must be positive")
    lam = table.lambda_at(p)
    return hecke_recurrence(lam, nu) - chi_tN(spec, p) / math.sqrt(p) * hecke_recurrence(lam, nu - 1)


def halfint_sign(spec, table, p, nu, threshold=ZERO_THRESHOLD):
    """
    Sign of a(t p^(2 nu)) from the angle: the sign of

        sin((nu + 1) theta_p) - chi_tN(p) / sqrt(p) sin(nu theta_p)

    with |difference| < threshold counted as 0.

    Raises
    ------

    DegenerateAngleError if theta_p is 0 or pi

    """
    _check_prime(spec, p)
    theta = angle(table.lambda_at(p))
    if abs(math.sin(theta)) < SIN_EPSILON:
        raise DegenerateAngleError(f"theta_{p} of {table.spec.label} is {theta!r}")
    difference = math.sin((nu + 1) * theta) - chi_tN(spec, p) / math.sqrt(p) * math.sin(nu * theta)
    if difference >= threshold:
        return 1
    if difference <= -threshold:
        return -1
    return 0


@dataclass(frozen=True, eq=False)
class _HalfIntegralPrimes:
    """
    Primes shared by two lift tables outside 2 N1 N2, with their aligned data.
    """
    primes: np.ndarray
    lambdas: tuple
    chis: tuple

    def normalized(self, nu):
        sqrt_p = np.sqrt(self.primes.astype(float))
        return tuple(
            hecke_recurrence(lam, nu) - chi / sqrt_p * hecke_recurrence(lam, nu - 1)
            for lam, chi in zip(self.lambdas, self.chis)
        )

    def predicate(self, nu):
        sqrt_p = np.sqrt(self.primes.astype(float))
        thetas = tuple(angles_of(lam) for lam in self.lambdas)
        return tuple(
            np.sin((nu + 1) * theta) - chi / sqrt_p * np.sin(nu * theta)
            for theta, chi in zip(thetas, self.chis)
        ), thetas


def _halfint_primes(spec1, spec2, t1, t2, X):
    primes, lam1, lam2 = shared_primes(t1, t2, X)
    keep = np.array([not (spec1.excludes(p) or spec2.excludes(p)) for p in primes.tolist()], dtype=bool)
    primes, lam1, lam2 = primes[keep], lam1[keep], lam2[keep]
    chis = tuple(
        np.array([chi_tN(spec, p) for p in primes.tolist()], dtype=float)
        for spec in (spec1, spec2)
    )
    return _HalfIntegralPrimes(primes, (lam1, lam2), chis)


def halfint_sign_density(spec1, spec2, t1, t2, nu, X, threshold=ZERO_THRESHOLD):
    """
    Sign classes of a_1(t p^(2 nu)) a_2(t p^(2 nu)) over primes p <= X not dividing 2 N1 N2.

    The report also counts the primes where the sin-comparison predicate
    disagrees with the sign of the normalized value (predicate_mismatches),
    over primes whose values are at least 1e-10 in size and whose angles
    are not 0 or pi.

    Parameters
    ----------

    spec1, spec2 : HalfIntegralSpec
    t1, t2 : EigenvalueTable of spec1.underlying and spec2.underlying
    nu : odd positive integer
    X : positive integer

    """
    validate_odd_nu(nu)
    _check_tables(spec1, spec2, t1, t2)
    data = _halfint_primes(spec1, spec2, t1, t2, X)
    v1, v2 = data.normalized(nu)
    signs = classify(v1 * v2, threshold)
    positive, negative, zero = class_counts(signs)

    (d1, d2), (theta_1, theta_2) = data.predicate(nu)
    comparable = (
        (np.abs(v1) >= PREDICATE_MARGIN) & (np.abs(v2) >= PREDICATE_MARGIN)
        & (np.abs(np.sin(theta_1)) >= SIN_EPSILON) & (np.abs(np.sin(theta_2)) >= SIN_EPSILON)
    )
    mismatches = int(np.count_nonzero(
        comparable & ((np.sign(d1) != np.sign(v1)) | (np.sign(d2) != np.sign(v2)))
    ))
    if mismatches:
        logger.warning("%d primes where the sign predicate disagrees with the value", mismatches)

    report = SignDensityReport(
        experiment="halfint-density",
        params={
            "forms": [spec1.label, spec2.label],
            "lifts": [spec1.underlying.label, spec2.underlying.label],
            "k": [spec1.k, spec2.k],
            "N": [spec1.level, spec2.level],
            "t": [spec1.t, spec2.t],
            "nu": nu,
            "X": X,
            "zero_threshold": threshold,
        },
        positive=positive,
        negative=negative,
        zero=zero,
        extras={
            "sign_changes": sign_changes(signs),
            "predicate_checked": int(np.count_nonzero(comparable)),
            "predicate_mismatches": mismatches,
        },
    )
    logger.info("halfint-density nu=%d X=%d: %s", nu, X, report.densities)
    return report


def epsilon_counterexamples(spec1, spec2, t1, t2, nu, eps, X, threshold=ZERO_THRESHOLD):
    """
    Primes 1/eps^2 < p <= X with both angles in I_eps (or both in I'_eps)
    whose product a_1(t p^(2 nu)) a_2(t p^(2 nu)) is not positive.

    For such primes sin((nu + 1) theta) exceeds eps >= 1/sqrt(p) in
    absolute value with the same sign for both forms, so the list is
    always empty.
    """
    return _epsilon_scan(spec1, spec2, t1, t2, nu, eps, X, threshold)["counterexamples"]


def epsilon_lower_bound(spec1, spec2, t1, t2, nu, eps, X, threshold=ZERO_THRESHOLD):
    """
    Counting inequality behind the positive density of the half-integral sign classes.

    With S(U, V)(X) the number of primes p <= X (not dividing 2 N1 N2)
    with (theta_1(p), theta_2(p)) in U x V,

        pi_pos(X) + pi(1/eps^2) >= S(I_eps, I_eps)(X) + S(I'_eps, I'_eps)(X)

    must hold, and as X grows S(...)/pi(X) tends to
    mu(I_eps)^2 + mu(I'_eps)^2, which tends to 1/2 as eps -> 0.

    Returns a dict of the counts, the limiting bound, the empirical
    positive density and whether the inequality holds.

    """
    scan = _epsilon_scan(spec1, spec2, t1, t2, nu, eps, X, threshold)
    lower = scan["S_eps"] + scan["S_eps_primed"]
    scan["inequality_holds"] = scan["positive"] + scan["pi_small"] >= lower
    scan["counterexamples"] = len(scan["counterexamples"])
    return scan


def _epsilon_scan(spec1, spec2, t1, t2, nu, eps, X, threshold):
    validate_odd_nu(nu)
    _check_tables(spec1, spec2, t1, t2)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps!r}")
    inner = epsilon_interval_union(nu, eps)
    inner_primed = epsilon_interval_union(nu, eps, primed=True)

    data = _halfint_primes(spec1, spec2, t1, t2, X)
    v1, v2 = data.normalized(nu)
    signs = classify(v1 * v2, threshold)
    theta_1, theta_2 = (angles_of(lam) for lam in data.lambdas)
    in_eps = inner.contains_array(theta_1) & inner.contains_array(theta_2)
    in_eps_primed = inner_primed.contains_array(theta_1) & inner_primed.contains_array(theta_2)
    small = data.primes <= 1 / eps ** 2

    bad = (in_eps | in_eps_primed) & ~small & (signs != 1)
    counterexamples = data.primes[bad].tolist()
    if counterexamples:
        logger.warning("eps=%g: %d containment counterexamples", eps, len(counterexamples))

    n = len(data.primes)
    positive = int(np.count_nonzero(signs == 1))
    return {
        "eps": eps,
        "nu": nu,
        "X": X,
        "primes": n,
        "positive": positive,
        "positive_density": positive / n if n else float("nan"),
        "pi_small": int(np.count_nonzero(small)),
        "S_eps": int(np.count_nonzero(in_eps)),
        "S_eps_primed": int(np.count_nonzero(in_eps_primed)),
        "limit_bound": product_measure(inner, inner) + product_measure(inner_primed, inner_primed),
        "counterexamples": counterexamples,
    }


def _check_tables(spec1, spec2, t1, t2):
    for spec, table in ((spec1, t1), (spec2, t2)):
        if table.spec != spec.underlying:
            raise ValueError(f"table is for {table.spec.label}, the lift of {spec.label} is {spec.underlying.label}")


def _check_prime(spec, p):
    if spec.excludes(p):
        raise RamifiedPrimeError(f"p={p} divides 2N for {spec.label} (N={spec.level})")


def _check_flavor(series, flavor):
    if series.flavor != flavor:
        raise ValueError(f"expected a {flavor} series, got {series.flavor}")
