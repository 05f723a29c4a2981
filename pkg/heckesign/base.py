import abc
from collections import deque
from collections.abc import Iterator
from itertools import chain


WINDOW_TYPES = ("expanding", "fixed", "indexed")


class RunningObject(Iterator):
    """
    Base class for iterators summarising a stream of observations,
    such as the signs of a product over the primes in ascending order.

    The base class owns the window: it reads the stream, keeps the
    observations currently inside the window and says when one enters
    or leaves. Window types:

     * 'expanding'  everything seen so far, the quotient behind a
                    natural density at the current point
     * 'fixed'      the last window_size observations
     * 'indexed'    (index, value) pairs, for example (p, sign),
                    keeping the values whose index lies in
                    (latest index - window_size, latest index]

    Subclasses implement:

     * _init_summary()    reset the summary state
     * _observe(value)    account for a value entering the window
     * _forget(value)     account for a value leaving the window
     * current_value      (property) the summary of the window

    and may override _coerce(value) to validate or normalise each
    value before it enters.

    """
    def __init__(self, iterable, window_size=None, window_type="expanding"):
        if window_type not in WINDOW_TYPES:
            raise ValueError(f"Unknown window_type '{window_type}'")
        self.window_type = window_type
        self.window_size = _validate_window_size(window_size, window_type)
        self.seen = 0
        self._iterator = iter(iterable)
        self._step = {
            "expanding": self._step_expanding,
            "fixed": self._step_fixed,
            "indexed": self._step_indexed,
        }[window_type]
        # (index, value) entries, oldest first; unused by expanding windows
        self._entries = deque()
        self._init_summary()

    def __repr__(self):
        return f"{type(self).__name__}(window_size={self.window_size}, window_type='{self.window_type}')"

    def __next__(self):
        self._step()
        return self.current_value

    def __len__(self):
        """
        Number of observations currently inside the window.
        """
        return self.seen if self.window_type == "expanding" else len(self._entries)

    def _take(self):
        return self._coerce(next(self._iterator))

    def _enter(self, index, value):
        self.seen += 1
        self._entries.append((index, value))
        self._observe(value)

    def _leave(self):
        _, value = self._entries.popleft()
        self._forget(value)

    def _step_expanding(self):
        value = self._take()
        self.seen += 1
        self._observe(value)

    def _step_fixed(self):
        # the first summary is reported once the window is full
        while len(self._entries) < self.window_size:
            self._enter(self.seen, self._take())
            if len(self._entries) == self.window_size:
                return
        self._enter(self.seen, self._take())
        self._leave()

    def _step_indexed(self):
        index, raw = next(self._iterator)
        if self._entries and index < self._entries[-1][0]:
            raise ValueError(
                f"indexes must be non-decreasing, got {index} after {self._entries[-1][0]}"
            )
        self._enter(index, self._coerce(raw))
        oldest_kept = index - self.window_size
        while self._entries[0][0] <= oldest_kept:
            self._leave()

    def extend(self, iterable):
        """
        Continue the stream with a new iterable.

        May be called at any time, also after StopIteration. The
        observations already in the window stay there.
        """
        self._iterator = chain(self._iterator, iterable)

    def _coerce(self, value):
        return value

    @property
    @abc.abstractmethod
    def current_value(self):
        """
        Summary of the observations in the window
        """

    @abc.abstractmethod
    def _init_summary(self):
        """
        Reset the summary for an empty window
        """

    @abc.abstractmethod
    def _observe(self, value):
        """
        Add value to the summary
        """

    @abc.abstractmethod
    def _forget(self, value):
        """
        Remove value from the summary
        """


def _validate_window_size(window_size, window_type):
    if window_type == "expanding":
        if window_size is not None:
            raise ValueError("window_size is not used by expanding windows")
        return None
    if isinstance(window_size, bool) or not isinstance(window_size, int):
        raise TypeError(f"window_size must be integer type, got {type(window_size).__name__}")
    if window_size <= 0:
        raise ValueError("window_size must be positive")
    return window_size
