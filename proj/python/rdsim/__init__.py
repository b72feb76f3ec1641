"""Python bindings for the rds simulation core."""

from fractions import Fraction

from ._core import *  # noqa: F401,F403
from ._core import __version__, survival_bound as _survival_bound, tail_probability as _tail_probability


def survival_bound(k, n):
    """k/(k+n) as an exact Fraction."""
    return Fraction(*_survival_bound(k, n))


def tail_probability(k):
    """P(exponent >= k) = 1/(k-1) as an exact Fraction."""
    return Fraction(*_tail_probability(k))
