"""
Helper utilities for curvmix: rendering of exact and float values.

Updates: v0.1.0 - 2026-10-16 - Rational/decimal formatting and JSON payload helpers.
"""

from __future__ import annotations

import math
import numbers
from enum import Enum
from fractions import Fraction
from typing import Any, Mapping, Union

import numpy as np

Number = Union[Fraction, int, float]

DECIMAL_DIGITS = 12


def is_exact(value: Any) -> bool:
    """Return True for rational values (Fraction, int, numpy integers), False for floats."""
    if isinstance(value, bool):
        return False
    return isinstance(value, numbers.Rational)


def format_rational(value: Number) -> str:
    """Format a value as "p/q" when exact, otherwise as the shortest float repr."""
    if is_exact(value):
        frac = Fraction(value)
        if frac.denominator == 1:
            return str(frac.numerator)
        return f"{frac.numerator}/{frac.denominator}"
    return repr(float(value))


def format_decimal(value: Number, decimals: int = DECIMAL_DIGITS) -> str:
    """Format a value with a fixed number of decimals, '.' separator, no locale."""
    if is_exact(value):
        frac = Fraction(value)
        scaled = round(frac * 10 ** decimals)
        sign = "-" if scaled < 0 else ""
        digits = str(abs(scaled)).rjust(decimals + 1, "0")
        if decimals == 0:
            return f"{sign}{digits}"
        return f"{sign}{digits[:-decimals]}.{digits[-decimals:]}"
    number = float(value)
    if math.isnan(number) or math.isinf(number):
        return str(number)
    return f"{number:.{decimals}f}"


def format_value(value: Number) -> str:
    """Human-readable rendering used in Rich tables: "p/q (decimal)" for exact values."""
    if is_exact(value):
        frac = Fraction(value)
        if frac.denominator == 1:
            return str(frac.numerator)
        return f"{format_rational(frac)} ({format_decimal(frac, 6)})"
    return format_decimal(value, 6)


def value_payload(value: Number) -> dict:
    """Return the JSON payload used for every numeric report value."""
    if is_exact(value):
        return {"value": format_rational(value), "decimal": format_decimal(value)}
    return {"value": float(value), "decimal": format_decimal(value)}


def parse_fraction(text: Any) -> Fraction:
    """Parse "p/q", integers or decimal strings exactly."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a number: {text!r}")
    if isinstance(text, numbers.Integral):
        return Fraction(int(text))
    if isinstance(text, float):
        return Fraction(repr(float(text)))
    return Fraction(str(text).strip())


def to_jsonable(obj: Any) -> Any:
    """Recursively convert report structures into JSON-serializable values."""
    if obj is None or isinstance(obj, (str, bool)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (Fraction, float, np.floating)) and not isinstance(obj, bool):
        return value_payload(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Mapping):
        return {str(key): to_jsonable(item) for key, item in obj.items()}
    if isinstance(obj, np.ndarray):
        return [to_jsonable(item) for item in obj.tolist()]
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(item) for item in items]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    return str(obj)


def safe_float(value: Any, default: float = math.nan) -> float:
    """Convert to float, returning ``default`` when conversion fails."""
    try:
        return float(value)
    except (TypeError, ValueError, OverflowError):
        return default
