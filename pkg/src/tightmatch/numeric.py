"""Threshold comparison rule for counts against real-valued bounds.

Integer counts are compared against bounds that may be exact rationals (or
ints) or binary floats coming from irrational threshold formulas such as
``sqrt(alpha) * n``.  Exact bounds compare exactly; float bounds use a fixed
epsilon of 2**-40 so that verdicts are reproducible across platforms:
a count c passes ``c >= bound`` iff ``c >= ceil(bound - EPS)``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

EPS = 2.0**-40

_EXACT = (int, Fraction)


def at_least(count: int, bound) -> bool:
    """count >= bound under the documented rule."""
    if isinstance(bound, _EXACT):
        return count >= bound
    return count >= bound - EPS


def more_than(count: int, bound) -> bool:
    """count > bound under the documented rule."""
    if isinstance(bound, _EXACT):
        return count > bound
    return count > bound + EPS


def below(count: int, bound) -> bool:
    """count < bound under the documented rule (negation of at_least)."""
    return not at_least(count, bound)


def array_at_least(values: np.ndarray, bound) -> np.ndarray:
    """Vectorised at_least over an int array; returns a bool array."""
    values = np.asarray(values)
    if isinstance(bound, int):
        return values >= bound
    if isinstance(bound, Fraction):
        hi = int(values.max(initial=0))
        if hi.bit_length() + bound.denominator.bit_length() < 62:
            return values * bound.denominator >= bound.numerator
        return np.asarray([int(v) * bound.denominator >= bound.numerator for v in values], dtype=bool)
    return values >= bound - EPS


def array_below(values: np.ndarray, bound) -> np.ndarray:
    return ~array_at_least(values, bound)
