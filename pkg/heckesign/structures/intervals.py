import math
from dataclasses import dataclass

import numpy as np


# endpoints within this distance of 0 or pi are snapped onto the boundary
ENDPOINT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class IntervalUnion:
    """
    Finite union of disjoint open subintervals of [0, pi].

    Parameters
    ----------

    parts : iterable of (a, b) pairs with 0 <= a < b <= pi, pairwise
        disjoint; they are stored sorted by left endpoint

    Notes
    -----

    All intervals are open. Endpoints have measure zero for every
    measure used here, so a point lying exactly on an endpoint is
    simply not contained in the union.

    Examples
    --------

    >>> import math
    >>> u = IntervalUnion([(0, math.pi / 2)])
    >>> u.contains(1.0), u.contains(math.pi / 2)
    (True, False)

    """
    parts: tuple

    def __post_init__(self):
        parts = []
        for a, b in self.parts:
            a, b = float(a), float(b)
            if -ENDPOINT_TOLERANCE < a < 0:
                a = 0.0
            if math.pi < b < math.pi + ENDPOINT_TOLERANCE:
                b = math.pi
            if not 0 <= a < b <= math.pi:
                raise ValueError(f"interval ({a!r}, {b!r}) is empty or not inside [0, pi]")
            parts.append((a, b))
        parts.sort()
        for (_, b), (a, _) in zip(parts, parts[1:]):
            if a < b:
                raise ValueError("intervals must be pairwise disjoint")
        object.__setattr__(self, "parts", tuple(parts))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    @property
    def length(self):
        """
        Lebesgue measure of the union.
        """
        return math.fsum(b - a for a, b in self.parts)

    def contains(self, theta):
        return any(a < theta < b for a, b in self.parts)

    def contains_array(self, thetas):
        """
        Boolean mask of the entries of thetas lying in the union.
        """
        thetas = np.asarray(thetas, dtype=float)
        mask = np.zeros(thetas.shape, dtype=bool)
        for a, b in self.parts:
            mask |= (thetas > a) & (thetas < b)
        return mask

    def is_subset_of(self, other):
        return all(any(c <= a and b <= d for c, d in other.parts) for a, b in self.parts)


FULL_INTERVAL = IntervalUnion(((0.0, math.pi),))
