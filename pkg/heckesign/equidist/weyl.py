"""
Orbits of (nu theta_1 / 2pi, nu theta_2 / 2pi) modulo 1.

When 1, theta_1/2pi and theta_2/2pi are linearly independent over Q
these orbits are uniformly distributed in the unit square, which is
what drives the density-1/2 limits of the prime-power sign experiments.

"""
import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from heckesign.angles import DEFAULT_HEIGHT, DEFAULT_TOLERANCE, rational_approximation
from heckesign.measures import sin_box_measure


logger = logging.getLogger(__name__)

DISCREPANCY_GRID = 64

# orbit points generated per numpy block
_CHUNK = 1 << 20


def orbit(theta_1, theta_2, x, start=1):
    """
    Fractional parts ({nu theta_1/2pi}, {nu theta_2/2pi}) for nu = start..start + x - 1.

    Returns an (x, 2) float array with entries in [0, 1).

    """
    _validate_length(x)
    nu = np.arange(start, start + x, dtype=float)
    alpha = np.array([theta_1, theta_2], dtype=float) / (2 * math.pi)
    points = np.mod(nu[:, None] * alpha[None, :], 1.0)
    # np.mod can round up to exactly 1.0 for tiny negative products
    points[points >= 1.0] = 0.0
    return points


def _orbit_chunks(theta_1, theta_2, x):
    for start in range(1, x + 1, _CHUNK):
        yield orbit(theta_1, theta_2, min(_CHUNK, x + 1 - start), start=start)


def weyl_box_proportion(theta_1, theta_2, box, x):
    """
    Proportion of nu <= x whose orbit point lies in the closed box.

    Parameters
    ----------

    theta_1, theta_2 : real angles
    box : ((u1, v1), (u2, v2)) with 0 <= u <= v <= 1 on each axis
    x : positive integer, number of orbit points

    Examples
    --------

    >>> weyl_box_proportion(1.0, 2.0, ((0, 1), (0, 1)), 100)
    1.0
    >>> weyl_box_proportion(0.0, 0.0, ((0.5, 1), (0, 1)), 10)
    0.0

    """
    (u1, v1), (u2, v2) = _validate_box(box)
    _validate_length(x)
    hits = 0
    for points in _orbit_chunks(theta_1, theta_2, x):
        inside = (
            (points[:, 0] >= u1) & (points[:, 0] <= v1)
            & (points[:, 1] >= u2) & (points[:, 1] <= v2)
        )
        hits += int(np.count_nonzero(inside))
    return hits / x


@dataclass(frozen=True)
class WeylOrbitStats:
    """
    Box counts and a grid discrepancy estimate for one orbit.

    discrepancy is the largest |count/x - area| over the anchored boxes
    [0, i/g) x [0, j/g), i, j = 1..g, on a g x g grid.
    """
    thetas: tuple
    x: int
    box_counts: dict = field(default_factory=dict)
    discrepancy: float = float("nan")
    grid: int = DISCREPANCY_GRID

    def proportion(self, box):
        return self.box_counts[_box_key(box)] / self.x

    def as_dict(self):
        return {
            "thetas": list(self.thetas),
            "x": self.x,
            "grid": self.grid,
            "discrepancy": self.discrepancy,
            "boxes": [
                {"box": [list(side) for side in key], "count": count, "proportion": count / self.x}
                for key, count in sorted(self.box_counts.items())
            ],
        }


def weyl_orbit_stats(theta_1, theta_2, x, boxes=(), grid=DISCREPANCY_GRID):
    """
    Count orbit points in the given boxes and estimate the discrepancy.

    The anchored-box counts come from one np.histogram2d on the grid
    followed by cumulative sums along both axes.

    Examples
    --------

    >>> stats = weyl_orbit_stats(1.0, math.sqrt(2), 1000, boxes=[((0, 0.5), (0, 0.5))])
    >>> stats.x, len(stats.box_counts)
    (1000, 1)

    """
    _validate_length(x)
    if isinstance(grid, bool) or not isinstance(grid, int) or grid < 1:
        raise ValueError("grid must be a positive integer")
    boxes = [_validate_box(box) for box in boxes]

    counts = dict.fromkeys((_box_key(box) for box in boxes), 0)
    cells = np.zeros((grid, grid), dtype=np.int64)
    for points in _orbit_chunks(theta_1, theta_2, x):
        h, _, _ = np.histogram2d(points[:, 0], points[:, 1], bins=grid, range=[[0, 1], [0, 1]])
        cells += h.astype(np.int64)
        for (u1, v1), (u2, v2) in boxes:
            inside = (
                (points[:, 0] >= u1) & (points[:, 0] <= v1)
                & (points[:, 1] >= u2) & (points[:, 1] <= v2)
            )
            counts[_box_key(((u1, v1), (u2, v2)))] += int(np.count_nonzero(inside))

    anchored = cells.cumsum(axis=0).cumsum(axis=1) / x
    steps = np.arange(1, grid + 1) / grid
    area = np.outer(steps, steps)
    discrepancy = float(np.max(np.abs(anchored - area)))
    logger.debug("orbit of length %d: grid discrepancy %.3g", x, discrepancy)
    return WeylOrbitStats((float(theta_1), float(theta_2)), x, counts, discrepancy, grid)


class SinBoxCheck(NamedTuple):
    """
    Empirical and predicted proportion of nu <= x with both sin(nu theta_i) in [a, b].

    periods holds, for each angle, the period q of nu -> nu theta mod 2pi
    when theta/2pi is (numerically) a rational c/q, else None. When
    both are periodic so is the joint sequence, with period joint_period.
    """
    empirical: float
    predicted: float
    periods: tuple
    joint_period: object


def sin_box_proportion_check(theta_1, theta_2, a, b, x, height=DEFAULT_HEIGHT, tol=DEFAULT_TOLERANCE):
    """
    Compare the proportion of nu <= x with sin(nu theta_1), sin(nu theta_2)
    in [a, b] against the product of sin_box_measure(a, b).

    The prediction assumes the orbit is equidistributed modulo 1.
    It is exact for the sign quadrants (a, b) = (0, 1) or (-1, 0).

    Examples
    --------

    >>> check = sin_box_proportion_check(1.0, 2.0, -1, 1, 100)
    >>> check.empirical, check.predicted
    (1.0, 1.0)

    """
    predicted = sin_box_measure(a, b) ** 2
    _validate_length(x)
    hits = 0
    for start in range(1, x + 1, _CHUNK):
        nu = np.arange(start, min(start + _CHUNK, x + 1), dtype=float)
        s1 = np.sin(nu * theta_1)
        s2 = np.sin(nu * theta_2)
        hits += int(np.count_nonzero((s1 >= a) & (s1 <= b) & (s2 >= a) & (s2 <= b)))

    periods = tuple(rotation_period(theta, height, tol) for theta in (theta_1, theta_2))
    joint = math.lcm(*periods) if None not in periods else None
    return SinBoxCheck(hits / x, predicted, periods, joint)


def rotation_period(theta, height=DEFAULT_HEIGHT, tol=DEFAULT_TOLERANCE):
    """
    Period q of nu -> nu theta mod 2pi when theta/2pi is close to c/q, q <= height, else None.

    Examples
    --------

    >>> rotation_period(math.pi / 3), rotation_period(1.0, height=100)
    (6, None)

    """
    found = rational_approximation(theta / (2 * math.pi), height, tol)
    if found is None:
        return None
    c, q = found
    return q // math.gcd(c, q) if c else 1


def _box_key(box):
    (u1, v1), (u2, v2) = box
    return (float(u1), float(v1)), (float(u2), float(v2))


def _validate_box(box):
    try:
        (u1, v1), (u2, v2) = box
    except (TypeError, ValueError):
        raise ValueError(f"box must be ((u1, v1), (u2, v2)), got {box!r}") from None
    for u, v in ((u1, v1), (u2, v2)):
        if not 0 <= u <= v <= 1:
            raise ValueError(f"box side ({u!r}, {v!r}) must satisfy 0 <= u <= v <= 1")
    return (u1, v1), (u2, v2)


def _validate_length(x):
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
        raise TypeError(f"x must be integer type, got {type(x).__name__}")
    if x < 1:
        raise ValueError("x must be positive")
