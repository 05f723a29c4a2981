from typing import NamedTuple

from .base import RunningObject


class SignCounts(NamedTuple):
    """
    Counts of the positive, negative and zero classes in a window.
    """
    positive: int
    negative: int
    zero: int

    @property
    def total(self):
        return self.positive + self.negative + self.zero

    @property
    def densities(self):
        """
        (positive, negative, zero) as proportions of the total (NaN when empty).
        """
        n = self.total
        if not n:
            return (float("nan"),) * 3
        return self.positive / n, self.negative / n, self.zero / n


class SignTally(RunningObject):
    """
    Running counts of the sign classes in a stream of signs.

    Parameters
    ----------

    iterable : iterable of signs in {-1, 0, 1}, or of (index, sign)
        pairs for window_type='indexed'
    window_size : integer, the size of the window (not used by
        'expanding' windows)
    window_type : 'expanding' (default), 'fixed' or 'indexed'

    Complexity
    ----------

    Update time:  O(1)
    Memory usage: O(k) (O(1) for 'expanding' windows)

    where k is the size of the window

    Examples
    --------

    >>> from heckesign.tally import SignTally
    >>> list(SignTally([1, -1, 1, 0]))
    [SignCounts(positive=1, negative=0, zero=0),
     SignCounts(positive=1, negative=1, zero=0),
     SignCounts(positive=2, negative=1, zero=0),
     SignCounts(positive=2, negative=1, zero=1)]
    >>> list(SignTally([1, -1, 1, 0], window_size=2, window_type="fixed"))
    [SignCounts(positive=1, negative=1, zero=0),
     SignCounts(positive=1, negative=1, zero=0),
     SignCounts(positive=1, negative=0, zero=1)]

    An 'indexed' window keeps the signs of the primes in (p - W, p]:

    >>> list(SignTally([(2, 1), (3, -1), (5, -1), (7, 1)], window_size=3, window_type="indexed"))
    [SignCounts(positive=1, negative=0, zero=0),
     SignCounts(positive=1, negative=1, zero=0),
     SignCounts(positive=0, negative=2, zero=0),
     SignCounts(positive=1, negative=1, zero=0)]

    """
    def _init_summary(self):
        self._counts = {1: 0, -1: 0, 0: 0}

    def _coerce(self, value):
        return _validate_sign(value)

    def _observe(self, sign):
        self._counts[sign] += 1

    def _forget(self, sign):
        self._counts[sign] -= 1

    @property
    def current_value(self):
        return SignCounts(self._counts[1], self._counts[-1], self._counts[0])


def density_trace(signs, checkpoints):
    """
    Class densities of the first n signs for each n in checkpoints.

    Returns a list of (n, positive, negative, zero) tuples in ascending
    order of n; checkpoints beyond the length of the stream are skipped.

    Examples
    --------

    >>> density_trace([1, -1, 1, 1], [2, 4, 10])
    [(2, 0.5, 0.5, 0.0), (4, 0.75, 0.25, 0.0)]

    """
    wanted = sorted(set(checkpoints))
    if wanted and wanted[0] < 1:
        raise ValueError("checkpoints must be positive")
    trace = []
    for n, counts in enumerate(SignTally(signs), start=1):
        if len(trace) == len(wanted):
            break
        if n == wanted[len(trace)]:
            trace.append((n,) + counts.densities)
    return trace


def rolling_densities(signs, window_size):
    """
    Positive-class density over each run of window_size consecutive signs.
    """
    return [counts.densities[0] for counts in SignTally(signs, window_size, "fixed")]


def _validate_sign(sign):
    if sign not in (1, -1, 0):
        raise ValueError(f"sign must be one of -1, 0, 1, got {sign!r}")
    return int(sign)
