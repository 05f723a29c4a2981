from .intervals import FULL_INTERVAL, IntervalUnion
