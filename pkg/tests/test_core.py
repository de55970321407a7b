from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from decmin.core import (
    GroundSet, GroundSetTooLarge, add, ceil_vec, check_enumerable, chi, dot, exchange,
    floor_vec, fraction_str, histogram, popcount, square_sum, subset_sums, tilde_sum,
)


def test_ground_set_masks_round_trip():
    g = GroundSet(("a", "b", "c"))
    assert g.n == 3 and g.full == 7
    assert g.mask(["a", "c"]) == 5
    assert g.members(5) == ["a", "c"]
    assert g.from_key(g.key(5)) == 5
    assert g.vector({"b": 2}) == (0, 2, 0)
    assert g.as_dict((1, 2, 3)) == {"a": 1, "b": 2, "c": 3}


def test_ground_set_rejects_duplicates():
    with pytest.raises(ValueError):
        GroundSet(("a", "a"))


def test_enumeration_limit():
    check_enumerable(10)
    with pytest.raises(GroundSetTooLarge):
        check_enumerable(30)


def test_vector_helpers():
    assert chi(0b101, 3) == (1, 0, 1)
    assert exchange((0, 3), 0, 1) == (1, 2)
    assert add((1, 2), (3, 4)) == (4, 6)
    assert dot((1, 2), (3, 4)) == 11
    assert square_sum((1, 2, 0, 1)) == 6
    half = (Fraction(3, 2), Fraction(1, 2), Fraction(2))
    assert floor_vec(half) == (1, 0, 2)
    assert ceil_vec(half) == (2, 1, 2)
    assert fraction_str(Fraction(3, 2)) == "3/2"
    assert histogram((2, 1, 1, 0)) == {2: 1, 1: 2, 0: 1}


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=7))
def test_subset_sums_match_direct(x):
    sums = subset_sums(x)
    for Z in range(1 << len(x)):
        assert sums[Z] == tilde_sum(x, Z) == sum(v for i, v in enumerate(x) if Z >> i & 1)
    assert popcount(len(sums) - 1) == len(x)
