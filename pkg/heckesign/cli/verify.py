"""
The acceptance suite run by `heckesign verify-all`.

Each criterion returns a CriterionResult; verify_all writes one JSON
report per criterion and a verify.json summary. Sizes and tolerances
all come from the RunConfig so the suite can run at small scale.

"""
import hashlib
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from heckesign.angles import angle, angles_of, relation_search
from heckesign.arith import sieve
from heckesign.equidist import (
    angles_gof,
    pair_st_gof,
    prime_sign_density,
    sample_pair_st,
    shared_primes,
    sign_product_proportion_nu,
)
from heckesign.equidist.signs import ZERO_THRESHOLD
from heckesign.errors import DeligneBoundError
from heckesign.halfint import (
    CoefficientSeries,
    HalfIntegralSpec,
    epsilon_lower_bound,
    forward_series,
    get_halfint_preset,
    halfint_exact_normalized,
    halfint_normalized,
    halfint_sign,
    halfint_sign_density,
    inverse_series,
    is_fundamental_discriminant,
    quadratic_character,
)
from heckesign.measures import (
    arcsin_box_measure,
    epsilon_interval_union,
    product_measure,
    sign_interval_union,
    sin_box_measure,
    st_measure,
    st_measure_quadrature,
)
from heckesign.newforms import DELTA, EC11, EC37, ExplicitTable, NewformSpec, build_table
from heckesign.newforms.hecke import SIN_EPSILON, hecke_recurrence
from heckesign.qseries import DELTA_TABLE_BOUND, ramanujan_tau
from heckesign.reports import dumps, write_json


logger = logging.getLogger(__name__)

EXACT_TOLERANCE = 1e-12
QUADRATURE_TOLERANCE = 1e-9
PATH_TOLERANCE = 1e-9

_RANDOM_LEVELS = (1, 3, 5, 7, 11, 13, 15, 21)
_RANDOM_T = (1, 2, 3, 5, 6, 7, 10)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": bool(self.passed),
            "measured": self.measured,
            "tolerances": self.tolerances,
        }


def check_exact_arithmetic(config):
    """
    tau is multiplicative and tau(p^2) = tau(p)^2 - p^11; Mobius inversion
    undoes the Shimura sum exactly on random specs.
    """
    bound = min(config.verify_tau_limit, DELTA_TABLE_BOUND)
    tau = ramanujan_tau(bound)
    smallest = _smallest_prime_factors(bound)

    multiplicative_failures = 0
    for n in range(2, bound + 1):
        p = int(smallest[n])
        prime_power, m = p, n // p
        while m % p == 0:
            m //= p
            prime_power *= p
        if m > 1 and tau[n] != tau[prime_power] * tau[m]:
            multiplicative_failures += 1

    recurrence_failures = 0
    for p in sieve(max(2, math.isqrt(bound))).primes_up_to(math.isqrt(bound)).tolist():
        if tau[p * p] != tau[p] ** 2 - p ** 11:
            recurrence_failures += 1

    rng = np.random.default_rng(config.seed)
    roundtrip_failures = 0
    for i in range(config.verify_mobius_specs):
        spec = random_halfint_spec(rng, i)
        a = random_halfint_series(rng, config.verify_mobius_n)
        if inverse_series(spec, forward_series(spec, a)) != a:
            roundtrip_failures += 1

    return CriterionResult(
        1, "exact arithmetic",
        multiplicative_failures == recurrence_failures == roundtrip_failures == 0,
        {
            "tau_bound": bound,
            "multiplicative_failures": multiplicative_failures,
            "recurrence_failures": recurrence_failures,
            "roundtrip_specs": config.verify_mobius_specs,
            "roundtrip_n": config.verify_mobius_n,
            "roundtrip_failures": roundtrip_failures,
        },
    )


def random_halfint_spec(rng, index):
    """
    A random HalfIntegralSpec with a trivial or quadratic character, for round-trip checks.
    """
    k = int(rng.integers(1, 7))
    level = _RANDOM_LEVELS[int(rng.integers(len(_RANDOM_LEVELS)))]
    t = _RANDOM_T[int(rng.integers(len(_RANDOM_T)))]
    m = 4 * level
    discriminants = [D for D in range(-m, m + 1) if D and m % D == 0 and is_fundamental_discriminant(D)]
    D = discriminants[int(rng.integers(len(discriminants)))]
    lift = NewformSpec(f"random-{index}", weight=2 * k, level=level, source=ExplicitTable("random-lift.csv"))
    return HalfIntegralSpec(f"random-{index}", k=k, level=level, t=t, chi=quadratic_character(D, level), underlying=lift)


def random_halfint_series(rng, bound):
    """
    Rational coefficients a(t n^2), n <= bound, with a(t) = 1.
    """
    values = {1: Fraction(1)}
    for n in range(2, bound + 1):
        values[n] = Fraction(int(rng.integers(-10 ** 6, 10 ** 6)), int(rng.integers(1, 1000)))
    return CoefficientSeries("halfint", values, bound)


def check_identity_equivalence(config):
    """
    The Hecke recurrence and sin((nu + 1) theta)/sin(theta) agree for
    every prime in range and every nu up to the configured maximum.
    """
    measured = {}
    passed = True
    limits = (
        (DELTA, min(config.verify_identity_limit, DELTA_TABLE_BOUND)),
        (EC11, config.verify_identity_limit),
    )
    for spec, limit in limits:
        table = config.table(spec, limit)
        deviation, chebyshev = _path_deviation(table.lambdas, config.verify_identity_nu)
        measured[spec.label] = {"primes": len(table), "max_deviation": deviation, "chebyshev_violations": chebyshev}
        passed &= deviation <= PATH_TOLERANCE and chebyshev == 0
    return CriterionResult(
        2, "identity equivalence", passed, measured,
        {"relative": PATH_TOLERANCE, "nu_max": config.verify_identity_nu},
    )


def _path_deviation(lambdas, nu_max):
    thetas = angles_of(lambdas)
    sines = np.sin(thetas)
    usable = np.abs(sines) > SIN_EPSILON
    lam, thetas, sines = lambdas[usable], thetas[usable], sines[usable]
    worst = 0.0
    violations = 0
    prev, cur = np.ones_like(lam), lam.copy()
    for nu in range(1, nu_max + 1):
        trig = np.sin((nu + 1) * thetas) / sines
        if len(lam):
            worst = max(worst, float(np.max(np.abs(cur - trig) / np.maximum(1.0, np.abs(cur)))))
        violations += int(np.count_nonzero(np.abs(cur) > nu + 1 + PATH_TOLERANCE))
        prev, cur = cur, lam * cur - prev
    return worst, violations


def check_deligne_bound(config):
    """
    |lambda(p)| <= 2 for every tabulated prime of every preset.
    """
    measured = {}
    passed = True
    limits = (
        (DELTA, min(config.verify_deligne_delta_limit, DELTA_TABLE_BOUND)),
        (EC11, config.verify_deligne_ec_limit),
        (EC37, config.verify_deligne_ec_limit),
    )
    for spec, limit in limits:
        try:
            table = config.table(spec, limit)
        except DeligneBoundError as e:
            measured[spec.label] = {"limit": limit, "error": str(e)}
            passed = False
            continue
        largest = float(np.max(np.abs(table.lambdas))) if len(table) else 0.0
        measured[spec.label] = {"limit": limit, "primes": len(table), "max_abs_lambda": largest}
        passed &= largest <= 2
    return CriterionResult(3, "Deligne bound", passed, measured, {"bound": 2})


def check_measure_identities(config):
    """
    Closed-form Sato-Tate masses of the sign unions and their products,
    cross-checked against midpoint quadrature.
    """
    worst_exact = 0.0
    worst_quadrature = 0.0
    for nu in range(1, config.verify_measure_nu + 1, 2):
        plus, minus = sign_interval_union(nu, "+"), sign_interval_union(nu, "-")
        worst_exact = max(worst_exact, abs(st_measure(plus) - 0.5), abs(st_measure(minus) - 0.5))
        for u in (plus, minus):
            for v in (plus, minus):
                worst_exact = max(worst_exact, abs(product_measure(u, v) - 0.25))
        inner, inner_primed = epsilon_interval_union(nu, 0.0), epsilon_interval_union(nu, 0.0, primed=True)
        worst_exact = max(
            worst_exact,
            abs(product_measure(inner, inner) - 0.25),
            abs(product_measure(inner_primed, inner_primed) - 0.25),
        )
        worst_quadrature = max(
            worst_quadrature, abs(st_measure(plus) - st_measure_quadrature(plus, config.verify_panels))
        )

    quadrant_gap = max(
        abs(sin_box_measure(a, b) - arcsin_box_measure(a, b)) for a, b in ((0.0, 1.0), (-1.0, 0.0))
    )
    return CriterionResult(
        4, "measure identities",
        worst_exact <= EXACT_TOLERANCE and worst_quadrature <= QUADRATURE_TOLERANCE and quadrant_gap <= EXACT_TOLERANCE,
        {
            "nu_max": config.verify_measure_nu,
            "max_exact_error": worst_exact,
            "max_quadrature_gap": worst_quadrature,
            "sin_box_quadrant_gap": quadrant_gap,
        },
        {"exact": EXACT_TOLERANCE, "quadrature": QUADRATURE_TOLERANCE, "panels": config.verify_panels},
    )


def check_nu_density(config):
    """
    Prime-power sign proportion at a fixed prime after an independence screen.
    """
    t1, t2 = config.table(DELTA, config.p), config.table(EC11, config.p)
    thetas = [angle(t.lambda_at(config.p)) for t in (t1, t2)]
    screen = relation_search(thetas[0], thetas[1], config.height, config.tol)
    report = sign_product_proportion_nu(t1, t2, config.p, config.verify_x)
    positive = report.densities["positive"]
    passed = not screen.found and abs(positive - 0.5) <= config.nu_tolerance
    return CriterionResult(
        5, "prime-power sign proportion", passed,
        {"screen": screen.as_dict(), "report": report.as_dict()},
        {"positive": [0.5 - config.nu_tolerance, 0.5 + config.nu_tolerance]},
    )


def check_prime_density(config):
    """
    Natural densities of the sign classes over primes for each configured odd nu.

    Besides the tolerances, delta(>= 0) from the report and delta(< 0)
    recounted from the products over the shared primes must add up to 1.
    """
    limit = config.verify_density_limit
    t1, t2 = config.table(DELTA, limit), config.table(EC11, limit)
    _, lam1, lam2 = shared_primes(t1, t2, limit)
    reports = {}
    passed = True
    for nu in config.verify_density_nu:
        report = prime_sign_density(t1, t2, nu, limit)
        d = report.densities
        products = hecke_recurrence(lam1, nu) * hecke_recurrence(lam2, nu)
        below = int(np.count_nonzero(products <= -ZERO_THRESHOLD))
        if len(products) and report.denominator:
            closure_gap = abs((report.positive + report.zero) / report.denominator + below / len(products) - 1)
        else:
            closure_gap = math.nan
        passed &= (
            abs(d["positive"] - 0.5) <= config.density_tolerance
            and abs(d["negative"] - 0.5) <= config.density_tolerance
            and d["zero"] <= config.zero_density_max
            and closure_gap <= EXACT_TOLERANCE
        )
        reports[str(nu)] = {**report.as_dict(), "closure_gap": closure_gap}
    return CriterionResult(
        6, "prime sign densities", passed, reports,
        {"density": config.density_tolerance, "zero_max": config.zero_density_max, "closure": EXACT_TOLERANCE},
    )


def check_pair_st(config):
    """
    Pair histogram and marginal KS distances, with a seeded sampler as control.
    """
    t1 = config.table(DELTA, config.verify_density_limit)
    t2 = config.table(EC11, config.verify_density_limit)
    report = pair_st_gof(t1, t2, config.verify_density_limit, config.bins)
    deviation = report.max_relative_deviation(config.min_expected)
    control = angles_gof(*sample_pair_st(config.samples, config.seed), config.bins)
    passed = (
        not deviation > config.deviation_max
        and all(s <= config.ks_max for s, _ in report.ks)
        and all(s <= config.sampler_ks_max for s, _ in control.ks)
    )
    return CriterionResult(
        7, "pair Sato-Tate fit", passed,
        {
            "report": report.as_dict(),
            "max_relative_deviation": deviation,
            "sampler_ks": [s for s, _ in control.ks],
        },
        {
            "deviation_max": config.deviation_max,
            "min_expected": config.min_expected,
            "ks_max": config.ks_max,
            "sampler_ks_max": config.sampler_ks_max,
        },
    )


def check_halfint(config):
    """
    Half-integral sign densities, eps-containment and the sign predicate on random draws.
    """
    spec1, spec2 = get_halfint_preset(config.h1), get_halfint_preset(config.h2)
    t1 = config.table(spec1.underlying, config.verify_density_limit)
    t2 = config.table(spec2.underlying, config.verify_density_limit)

    passed = True
    densities = {}
    for nu in config.verify_halfint_nu:
        report = halfint_sign_density(spec1, spec2, t1, t2, nu, config.verify_density_limit)
        passed &= abs(report.densities["positive"] - 0.5) <= config.density_tolerance
        passed &= report.extras["predicate_mismatches"] == 0
        densities[str(nu)] = report.as_dict()

    bounds = []
    for nu in config.verify_halfint_nu:
        for eps in config.eps:
            if eps <= 0:
                continue
            bound = epsilon_lower_bound(spec1, spec2, t1, t2, nu, eps, config.verify_density_limit)
            passed &= bound["counterexamples"] == 0 and bound["inequality_holds"]
            bounds.append(bound)

    draws = _predicate_draws(config, spec1, t1)
    passed &= draws["mismatches"] == 0 and draws["path_failures"] == 0
    return CriterionResult(
        8, "half-integral sign densities", passed,
        {"densities": densities, "epsilon": bounds, "draws": draws},
        {"density": config.density_tolerance, "path": PATH_TOLERANCE},
    )


def _predicate_draws(config, spec, table):
    rng = np.random.default_rng(config.seed)
    primes = [p for p in table.primes.tolist() if not spec.excludes(p)]
    checked = mismatches = path_failures = 0
    for _ in range(config.verify_draws if primes else 0):
        p = primes[int(rng.integers(len(primes)))]
        nu = int(rng.integers(1, config.verify_identity_nu + 1))
        theta = angle(table.lambda_at(p))
        if abs(math.sin(theta)) < SIN_EPSILON:
            continue
        value = halfint_normalized(spec, table, p, nu)
        if nu <= 50:
            exact = halfint_exact_normalized(spec, table, p, nu)
            if abs(exact - value) > PATH_TOLERANCE * max(1.0, abs(value)):
                path_failures += 1
        if abs(value) < 1e-10:
            continue
        checked += 1
        if halfint_sign(spec, table, p, nu) != (1 if value > 0 else -1):
            mismatches += 1
    return {"draws": config.verify_draws, "checked": checked, "mismatches": mismatches, "path_failures": path_failures}


def check_determinism(config):
    """
    Two runs of every experiment, each from freshly built tables and
    with the same seed, serialize to identical bytes.
    """
    first = _determinism_snapshot(config).encode("utf-8")
    second = _determinism_snapshot(config).encode("utf-8")
    return CriterionResult(
        9, "determinism", first == second,
        {
            "limit": min(config.verify_determinism_limit, DELTA_TABLE_BOUND),
            "bytes": [len(first), len(second)],
            "sha256": [hashlib.sha256(first).hexdigest(), hashlib.sha256(second).hexdigest()],
        },
    )


def _determinism_snapshot(config):
    limit = min(config.verify_determinism_limit, DELTA_TABLE_BOUND)
    spec1, spec2 = get_halfint_preset(config.h1), get_halfint_preset(config.h2)
    tables = {}
    for spec in (DELTA, EC11, EC37, spec1.underlying, spec2.underlying):
        if spec.label not in tables:
            tables[spec.label] = build_table(spec, limit, workers=config.workers)
    t1, t2 = tables[DELTA.label], tables[EC11.label]
    h1, h2 = tables[spec1.underlying.label], tables[spec2.underlying.label]

    snapshot = {
        "tables": {label: {"primes": t.primes, "a_p": t.raw} for label, t in tables.items()},
        "prime_density": [prime_sign_density(t1, t2, nu, limit) for nu in config.verify_density_nu],
        "pair_st": pair_st_gof(t1, t2, limit, config.bins),
        "halfint_density": [
            halfint_sign_density(spec1, spec2, h1, h2, nu, limit) for nu in config.verify_halfint_nu
        ],
        "epsilon": [
            epsilon_lower_bound(spec1, spec2, h1, h2, nu, eps, limit)
            for nu in config.verify_halfint_nu
            for eps in config.eps
            if eps > 0
        ],
        "measures": check_measure_identities(config),
        "sampler": angles_gof(*sample_pair_st(config.samples, config.seed), config.bins),
    }
    if config.p <= limit and not any(t.spec.divides_level(config.p) for t in (t1, t2)):
        snapshot["nu_density"] = sign_product_proportion_nu(t1, t2, config.p, limit)
    return dumps(snapshot)


CRITERIA = (
    check_exact_arithmetic,
    check_identity_equivalence,
    check_deligne_bound,
    check_measure_identities,
    check_nu_density,
    check_prime_density,
    check_pair_st,
    check_halfint,
    check_determinism,
)


def verify_all(config, version):
    """
    Run every criterion, write criterion_<n>.json and verify.json, and return the results.
    """
    results = []
    for criterion in CRITERIA:
        logger.info("running %s", criterion.__name__)
        result = criterion(config)
        logger.info("criterion %d (%s): %s", result.number, result.name, "pass" if result.passed else "FAIL")
        write_json(config.out_path / f"criterion_{result.number}.json", {
            "version": version,
            "config": config.as_dict(),
            "result": result,
        })
        results.append(result)
    write_json(config.out_path / "verify.json", {
        "version": version,
        "config": config.as_dict(),
        "criteria": [{"criterion": r.number, "name": r.name, "passed": bool(r.passed)} for r in results],
        "passed": all(r.passed for r in results),
    })
    return results


def format_results(results):
    width = max(len(r.name) for r in results)
    lines = [f"{'#':>2}  {'criterion':<{width}}  result"]
    lines.extend(f"{r.number:>2}  {r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}" for r in results)
    return "\n".join(lines)


def _smallest_prime_factors(bound):
    smallest = np.zeros(bound + 1, dtype=np.int64)
    for p in sieve(max(2, bound)).primes_up_to(bound).tolist():
        if p * p > bound:
            break
        block = smallest[p * p :: p]
        block[block == 0] = p
    unset = smallest == 0
    smallest[unset] = np.arange(bound + 1)[unset]
    return smallest
