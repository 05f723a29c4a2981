"""
Exceptions raised by heckesign.

Each error also subclasses the builtin exception a caller would
already expect (ValueError, LookupError, KeyError, ArithmeticError),
so code written against plain builtins keeps working.

"""


class HeckesignError(Exception):
    """
    Base class for all domain errors raised by heckesign.
    """


class DeligneBoundError(HeckesignError, ValueError):
    """
    A normalized prime eigenvalue violates |lambda(p)| <= 2.
    """


class BadReductionError(HeckesignError, ValueError):
    """
    Point counting was requested at a prime of bad reduction.
    """


class RamifiedPrimeError(HeckesignError, ValueError):
    """
    A value was requested at a prime dividing the level.
    """


class DegenerateAngleError(HeckesignError, ValueError):
    """
    The Sato-Tate angle is 0 or pi, where sin-quotients are undefined.
    """


class SourceExhaustedError(HeckesignError, LookupError):
    """
    A coefficient source cannot supply the requested prime.
    """


class MissingCoefficientError(HeckesignError, KeyError):
    """
    A coefficient series lacks an index needed by a divisor sum.
    """


class CacheMissError(HeckesignError, LookupError):
    """
    No cached table exists and building one was not permitted.
    """


class PathDisagreementError(HeckesignError, ArithmeticError):
    """
    The Hecke recurrence and the sin-quotient give different lambda(p^nu).
    """
