"""
Scalar and matrix coercion shared by the exact and float code paths.

Exact matrices are numpy object arrays holding ``fractions.Fraction``; float
matrices are float64 arrays. Integer scaling (numerators over one common
denominator) lets the hot loops run on Python integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable, Sequence, Tuple, Union

import numpy as np

from utils.helpers import is_exact, parse_fraction

Scalar = Union[Fraction, float]

FLOAT_ROW_TOLERANCE = 1e-12
FLOAT_SLACK = 1e-9


def exact_array(values: Any) -> np.ndarray:
    """Return an object array of Fractions with the shape of ``values``."""
    source = np.asarray(values, dtype=object)
    result = np.empty(source.shape, dtype=object)
    for index, item in np.ndenumerate(source):
        result[index] = parse_fraction(item)
    return result


def float_array(values: Any) -> np.ndarray:
    """Return a float64 array; Fractions and "p/q" strings are converted exactly first."""
    source = np.asarray(values, dtype=object)
    result = np.empty(source.shape, dtype=float)
    for index, item in np.ndenumerate(source):
        if isinstance(item, str):
            result[index] = float(parse_fraction(item))
        else:
            result[index] = float(item)
    return result


def common_denominator(values: Iterable[Any]) -> Tuple[np.ndarray, int]:
    """Scale exact values to Python-int numerators over their least common denominator."""
    fractions = [parse_fraction(value) for value in values]
    denominator = reduce(math.lcm, (frac.denominator for frac in fractions), 1)
    numerators = np.array(
        [frac.numerator * (denominator // frac.denominator) for frac in fractions],
        dtype=object,
    )
    return numerators, denominator


def scaled_matrix(matrix: np.ndarray) -> Tuple[np.ndarray, int]:
    """Integer-scale an exact matrix: returns (M, D) with matrix = M / D."""
    numerators, denominator = common_denominator(matrix.ravel())
    return numerators.reshape(matrix.shape), denominator


def to_float(value: Any) -> float:
    """Convert exact or float scalars (including huge rationals) to float."""
    if isinstance(value, Fraction):
        return value.numerator / value.denominator
    return float(value)


def slack_allowance(rhs: Any) -> float:
    """Float-mode tolerance for ``lhs <= rhs`` comparisons."""
    return FLOAT_SLACK * max(1.0, abs(to_float(rhs)))


def less_equal(lhs: Any, rhs: Any) -> bool:
    """Exact comparison when both sides are rational, otherwise with float slack."""
    if is_exact(lhs) and is_exact(rhs):
        return Fraction(lhs) <= Fraction(rhs)
    return to_float(lhs) - to_float(rhs) <= slack_allowance(rhs)


def is_exact_matrix(matrix: np.ndarray) -> bool:
    return matrix.dtype == object


def zeros_like_mode(shape: Union[int, Sequence[int]], exact: bool) -> np.ndarray:
    """Zero array holding Fraction(0) in exact mode."""
    if not exact:
        return np.zeros(shape, dtype=float)
    result = np.empty(shape, dtype=object)
    result.fill(Fraction(0))
    return result
