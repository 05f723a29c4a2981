"""
Goodness of fit of angle pairs against the 2-product Sato-Tate measure.

"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from heckesign.angles import angles_of
from heckesign.equidist.signs import shared_primes
from heckesign.measures import product_measure, st_cdf, st_inverse_cdf
from heckesign.structures.intervals import IntervalUnion


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PairHistogram:
    """
    B x B histogram of angle pairs on [0, pi]^2 with expected cell counts.

    expected[i, j] is total times the product measure of the cell
    [i pi/B, (i + 1) pi/B) x [j pi/B, (j + 1) pi/B).
    """
    bins: int
    counts: np.ndarray
    expected: np.ndarray

    @property
    def total(self):
        return int(self.counts.sum())

    def relative_deviation(self):
        """
        |observed - expected| / expected per cell.
        """
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.abs(self.counts - self.expected) / self.expected

    def rows(self):
        """
        (i, j, observed, expected) for every cell, row-major.
        """
        for i in range(self.bins):
            for j in range(self.bins):
                yield i, j, int(self.counts[i, j]), float(self.expected[i, j])


@dataclass(frozen=True, eq=False)
class PairStReport:
    histogram: PairHistogram
    chi_square: float
    dof: int
    p_value: float
    ks: tuple
    params: dict

    def max_relative_deviation(self, min_expected=0.0):
        """
        Largest |observed - expected| / expected over cells expecting at least min_expected.

        NaN when no cell qualifies.
        """
        cells = self.histogram.expected >= min_expected
        if not self.histogram.total or not cells.any():
            return float("nan")
        return float(np.max(self.histogram.relative_deviation()[cells]))

    def as_dict(self):
        return {
            "experiment": "pair-st",
            "params": self.params,
            "total": self.histogram.total,
            "bins": self.histogram.bins,
            "chi_square": self.chi_square,
            "dof": self.dof,
            "p_value": self.p_value,
            "ks": [{"statistic": s, "pvalue": pv} for s, pv in self.ks],
            "max_relative_deviation": self.max_relative_deviation(),
        }


def cell_masses(bins):
    """
    B x B array of product Sato-Tate masses of the grid cells.
    """
    edges = np.linspace(0.0, math.pi, bins + 1)
    cells = [IntervalUnion(((edges[i], edges[i + 1]),)) for i in range(bins)]
    return np.array([[product_measure(a, b) for b in cells] for a in cells])


def pair_histogram(theta_1, theta_2, bins):
    """
    PairHistogram of paired angle arrays.
    """
    if isinstance(bins, bool) or not isinstance(bins, int):
        raise TypeError(f"bins must be integer type, got {type(bins).__name__}")
    if bins < 1:
        raise ValueError("bins must be positive")
    theta_1 = np.asarray(theta_1, dtype=float)
    theta_2 = np.asarray(theta_2, dtype=float)
    if theta_1.shape != theta_2.shape:
        raise ValueError("angle arrays must have the same length")
    counts, _, _ = np.histogram2d(theta_1, theta_2, bins=bins, range=[[0, math.pi], [0, math.pi]])
    counts = counts.astype(np.int64)
    return PairHistogram(bins, counts, counts.sum() * cell_masses(bins))


def angles_gof(theta_1, theta_2, bins, params=None):
    """
    Pearson chi-square of the pair histogram and marginal Kolmogorov-Smirnov
    tests of each angle array against st_cdf.

    Examples
    --------

    >>> report = angles_gof([0.5, 1.5, 2.5], [1.0, 2.0, 3.0], 1)
    >>> report.chi_square
    0.0

    """
    histogram = pair_histogram(theta_1, theta_2, bins)
    n = histogram.total
    dof = bins * bins - 1
    if n:
        chi_square = float(np.sum((histogram.counts - histogram.expected) ** 2 / histogram.expected))
    else:
        chi_square = 0.0
    p_value = float(stats.chi2.sf(chi_square, dof)) if dof and n else 1.0

    ks = []
    for thetas in (theta_1, theta_2):
        if len(thetas):
            result = stats.kstest(np.asarray(thetas, dtype=float), st_cdf)
            ks.append((float(result.statistic), float(result.pvalue)))
        else:
            ks.append((float("nan"), float("nan")))

    report = PairStReport(histogram, chi_square, dof, p_value, tuple(ks), params or {})
    logger.debug("chi-square %.4g on %d dof over %d pairs", chi_square, dof, n)
    return report


def pair_st_gof(t1, t2, X, bins=8):
    """
    Fit of (theta_1(p), theta_2(p)), p <= X not dividing N1 N2, to the pair Sato-Tate law.

    Parameters
    ----------

    t1, t2 : EigenvalueTable covering primes up to X
    X : positive integer
    bins : bins per axis

    """
    _, lam1, lam2 = shared_primes(t1, t2, X)
    params = {"forms": [t1.spec.label, t2.spec.label], "X": X, "bins": bins}
    report = angles_gof(angles_of(lam1), angles_of(lam2), bins, params)
    logger.info("pair-st X=%d: chi-square %.4g, KS %s", X, report.chi_square, [s for s, _ in report.ks])
    return report


def sample_pair_st(n, seed=0):
    """
    n independent draws from the 2-product Sato-Tate measure by inverse-CDF sampling.

    Returns (theta_1, theta_2) arrays. The same seed always gives the
    same draws.

    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"n must be integer type, got {type(n).__name__}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = np.random.default_rng(seed)
    u = rng.random((2, n))
    thetas = np.asarray(st_inverse_cdf(u))
    return thetas[0], thetas[1]
