"""Coverage-oriented tests for utils.helpers functions."""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction

import numpy as np
import pytest

from utils import helpers


def test_is_exact_distinguishes_rationals() -> None:
    assert helpers.is_exact(Fraction(1, 3))
    assert helpers.is_exact(3)
    assert helpers.is_exact(np.int64(2))
    assert not helpers.is_exact(0.5)
    assert not helpers.is_exact(True)


def test_format_rational_and_decimal() -> None:
    assert helpers.format_rational(Fraction(3, 4)) == "3/4"
    assert helpers.format_rational(Fraction(4, 2)) == "2"
    assert helpers.format_rational(0.1) == "0.1"
    assert helpers.format_decimal(Fraction(1, 3)) == "0.333333333333"
    assert helpers.format_decimal(Fraction(-1, 8), 3) == "-0.125"
    assert helpers.format_decimal(Fraction(5, 2), 0) == "2"
    assert helpers.format_decimal(0.25, 4) == "0.2500"
    assert helpers.format_decimal(math.inf) == "inf"


def test_format_value_for_tables() -> None:
    assert helpers.format_value(Fraction(1, 4)) == "1/4 (0.250000)"
    assert helpers.format_value(Fraction(6, 3)) == "2"
    assert helpers.format_value(0.5) == "0.500000"


def test_value_payload() -> None:
    assert helpers.value_payload(Fraction(1, 2)) == {"value": "1/2", "decimal": "0.500000000000"}
    assert helpers.value_payload(0.5) == {"value": 0.5, "decimal": "0.500000000000"}


def test_parse_fraction_variants() -> None:
    assert helpers.parse_fraction("3/4") == Fraction(3, 4)
    assert helpers.parse_fraction(" 0.25 ") == Fraction(1, 4)
    assert helpers.parse_fraction(2) == 2
    assert helpers.parse_fraction(0.1) == Fraction(1, 10)
    with pytest.raises(ValueError):
        helpers.parse_fraction(True)
    with pytest.raises(ValueError):
        helpers.parse_fraction("half")


def test_to_jsonable_recurses() -> None:
    class Colour(Enum):
        RED = "red"

    class Holder:
        def to_dict(self):
            return {"x": Fraction(1, 2)}

    payload = helpers.to_jsonable(
        {
            "enum": Colour.RED,
            "array": np.array([1, 2]),
            "set": {3, 1},
            "nested": (Fraction(1, 4), np.float64(0.5)),
            "holder": Holder(),
            "other": object,
            1: None,
        }
    )
    assert payload["enum"] == "red"
    assert payload["array"] == [1, 2]
    assert payload["set"] == [1, 3]
    assert payload["nested"][0]["value"] == "1/4"
    assert payload["nested"][1]["value"] == 0.5
    assert payload["holder"] == {"x": {"value": "1/2", "decimal": "0.500000000000"}}
    assert payload["other"].startswith("<class")
    assert payload["1"] is None


def test_safe_float() -> None:
    assert helpers.safe_float("1.5") == 1.5
    assert math.isnan(helpers.safe_float("bad"))
    assert helpers.safe_float(None, 0.0) == 0.0
