"""
Sato-Tate angles and integer-relation screening.

A normalized prime eigenvalue with |lambda(p)| <= 2 determines a unique
angle theta_p in [0, pi] with lambda(p) = 2 cos(theta_p).

"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from heckesign.errors import DeligneBoundError


logger = logging.getLogger(__name__)

# values within this distance of +-2 are clamped before arccos
CLAMP_TOLERANCE = 1e-12

DEFAULT_HEIGHT = 1000
DEFAULT_TOLERANCE = 1e-9
MAX_HEIGHT = 10 ** 4

# rows of (m, n) lattice scanned per numpy block in relation_search
_BLOCK_ROWS = 128


def angle(lambda_p):
    """
    The angle theta in [0, pi] with lambda_p = 2 cos(theta).

    Examples
    --------

    >>> angle(2.0), angle(-2.0)
    (0.0, 3.141592653589793)

    """
    lambda_p = float(lambda_p)
    if abs(lambda_p) > 2 + CLAMP_TOLERANCE:
        raise DeligneBoundError(f"|lambda| = {abs(lambda_p)!r} exceeds 2")
    return math.acos(max(-1.0, min(1.0, lambda_p / 2)))


def angles_of(lambdas):
    """
    Vectorised angle() over a numpy array of eigenvalues.
    """
    lambdas = np.asarray(lambdas, dtype=float)
    bad = np.flatnonzero(np.abs(lambdas) > 2 + CLAMP_TOLERANCE)
    if len(bad):
        raise DeligneBoundError(f"|lambda| = {abs(lambdas[bad[0]])!r} exceeds 2")
    return np.arccos(np.clip(lambdas / 2, -1.0, 1.0))


@dataclass(frozen=True, eq=False)
class AngleSequence:
    """
    Sato-Tate angles of one newform at its tabulated primes, ascending in p.
    """
    label: str
    primes: np.ndarray
    thetas: np.ndarray

    def __len__(self):
        return len(self.primes)

    def __iter__(self):
        return zip(self.primes.tolist(), self.thetas.tolist())

    def at(self, p):
        i = int(np.searchsorted(self.primes, p))
        if i == len(self.primes) or self.primes[i] != p:
            raise KeyError(p)
        return float(self.thetas[i])


def angle_sequence(table):
    """
    AngleSequence of an EigenvalueTable.
    """
    return AngleSequence(table.spec.label, table.primes, angles_of(table.lambdas))


@dataclass(frozen=True)
class RelationReport:
    """
    Outcome of an exhaustive search for m theta_1/2pi + n theta_2/2pi = c.

    When found, relation holds (m, n, c) and residual is
    |m theta_1/2pi + n theta_2/2pi - c|. Otherwise relation is None and
    residual is the smallest residual seen over the whole search box.
    rationals holds, for each angle, (c, q) with theta/pi close to c/q,
    or None.
    """
    found: bool
    relation: tuple
    residual: float
    height: int
    tolerance: float
    rationals: tuple
    closest: tuple

    def describe(self):
        if self.found:
            m, n, c = self.relation
            return (
                f"relation {m}*t1 + {n}*t2 = {c} (turns) with residual {self.residual:.3g}, "
                f"height {self.height}, tolerance {self.tolerance:g}"
            )
        return f"no relation up to height {self.height}, tolerance {self.tolerance:g}"

    def as_dict(self):
        return {
            "found": self.found,
            "relation": list(self.relation) if self.relation else None,
            "residual": self.residual,
            "height": self.height,
            "tolerance": self.tolerance,
            "rationals": [list(r) if r else None for r in self.rationals],
            "closest": list(self.closest),
            "summary": self.describe(),
        }


def rational_approximation(x, height, tol):
    """
    Smallest q <= height with |q x - c| < tol for an integer c.

    Returns (c, q) or None.

    """
    q = np.arange(1, height + 1)
    v = q * x
    r = np.abs(v - np.rint(v))
    hits = np.flatnonzero(r < tol)
    if not len(hits):
        return None
    i = hits[0]
    return int(np.rint(v[i])), int(q[i])


def relation_search(theta_1, theta_2, height=DEFAULT_HEIGHT, tol=DEFAULT_TOLERANCE):
    """
    Screen 1, theta_1/2pi, theta_2/2pi for a small integer relation.

    Every (m, n) with |m|, |n| <= height is tried, with c the integer
    nearest to m theta_1/2pi + n theta_2/2pi. Among the relations with
    residual below tol the one of smallest height max(|m|, |n|) is
    reported, ties going to the smaller residual. The sign is fixed so
    that the first nonzero entry of (m, n) is positive.

    A negative result only screens: it cannot certify linear
    independence over Q.

    Parameters
    ----------

    theta_1, theta_2 : angles in (0, pi)
    height : positive integer <= 10^4
    tol : positive real

    Complexity
    ----------

    Time:         O(height^2), vectorised in blocks of rows
    Memory usage: O(height)

    Examples
    --------

    >>> import math
    >>> relation_search(math.pi / 3, 1.0, height=10).relation
    (6, 0, 1)

    """
    if isinstance(height, bool) or not isinstance(height, int):
        raise TypeError(f"height must be integer type, got {type(height).__name__}")
    if not 1 <= height <= MAX_HEIGHT:
        raise ValueError(f"height must be between 1 and {MAX_HEIGHT}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    for theta in (theta_1, theta_2):
        if not 0 < theta < math.pi:
            raise ValueError(f"angles must lie in (0, pi), got {theta!r}")

    alpha = theta_1 / (2 * math.pi)
    beta = theta_2 / (2 * math.pi)
    n = np.arange(-height, height + 1)

    best = None  # (height, residual, m, n, c)
    closest = (math.inf, 0, 0)
    for start in range(0, height + 1, _BLOCK_ROWS):
        m = np.arange(start, min(height, start + _BLOCK_ROWS - 1) + 1)
        v = m[:, None] * alpha + n[None, :] * beta
        c = np.rint(v)
        r = np.abs(v - c)
        if start == 0:
            # (0, n) and (0, -n) are the same relation; keep n > 0 only
            r[0, : height + 1] = np.inf

        i, j = np.unravel_index(np.argmin(r), r.shape)
        if r[i, j] < closest[0]:
            closest = (float(r[i, j]), int(m[i]), int(n[j]))

        rows, cols = np.nonzero(r < tol)
        if not len(rows):
            continue
        heights = np.maximum(m[rows], np.abs(n[cols]))
        order = np.lexsort((r[rows, cols], heights))
        k = order[0]
        candidate = (int(heights[k]), float(r[rows[k], cols[k]]), int(m[rows[k]]), int(n[cols[k]]), int(c[rows[k], cols[k]]))
        if best is None or candidate[:2] < best[:2]:
            best = candidate

    rationals = tuple(rational_approximation(theta / math.pi, height, tol) for theta in (theta_1, theta_2))
    if best is None:
        logger.debug("no relation below %g up to height %d (closest %r)", tol, height, closest)
        return RelationReport(False, None, closest[0], height, tol, rationals, closest)
    _, residual, m_best, n_best, c_best = best
    return RelationReport(True, (m_best, n_best, c_best), residual, height, tol, rationals, closest)
