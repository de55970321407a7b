import pytest
from hypothesis import given, strategies as st

import oracles
from decmin.core import sort_desc
from decmin.instances import four_element, two_element
from decmin.majorize import (
    EQUAL, GREATER, SMALLER, dec_compare, dec_min_class, excess_profile_leq, inc_compare,
    inc_max_class, least_majorized, least_majorized_class, majorizes, t_transform,
    weakly_submajorizes,
)
from decmin.mconvex import enumerate_points


def test_sorting():
    assert sort_desc((2, 5, 5, 1, 4)) == [5, 5, 4, 2, 1]
    assert sort_desc((1, -1, 1, 1)) == [1, 1, 1, -1]


def test_dec_compare():
    assert dec_compare((2, 5, 5, 1, 4), (1, 5, 5, 5, 1)) == SMALLER
    assert dec_compare((1, 5, 5, 5, 1), (2, 5, 5, 1, 4)) == GREATER
    assert dec_compare((2, 5, 5, 1, 4), (1, 4, 5, 2, 5)) == EQUAL
    assert inc_compare((1, 2), (2, 1)) == EQUAL
    with pytest.raises(ValueError):
        dec_compare((1,), (1, 2))


def test_majorization_examples():
    assert not majorizes((3, 0, 0, -3), (2, 2, -2, -2))
    assert majorizes((2, 0), (1, 1))
    assert weakly_submajorizes((1, 0), (0, 0))
    assert not weakly_submajorizes((1, 1), (2, 0))
    assert excess_profile_leq((1, 1), (2, 0))
    assert not excess_profile_leq((2, 2, -2, -2), (3, 0, 0, -3))


def test_t_transform():
    assert t_transform((0, 3), 0, 1, 1) == (1, 2)
    assert t_transform((0, 3), 0, 1, 0) == (0, 3)
    with pytest.raises(ValueError):
        t_transform((3, 0), 0, 1, 1)


def test_least_majorized():
    assert least_majorized([(2, 0, 0, 0), (1, -1, 1, 1)]) is None
    assert least_majorized(enumerate_points(two_element())) in {(1, 2), (2, 1)}
    assert least_majorized([(4, 4)]) == (4, 4)
    pts = enumerate_points(four_element())
    assert set(least_majorized_class(pts)) == set(dec_min_class(pts)) == set(inc_max_class(pts))


vecs = st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                        st.lists(st.integers(-5, 5), min_size=n, max_size=n)))


@given(vecs)
def test_majorization_characterizations_agree(pair):
    x, y = pair
    y = y[:-1] + [y[-1] + sum(x) - sum(y)]
    expected = oracles.majorized(x, y)
    assert majorizes(y, x) == expected == oracles.majorized_by_prefix(x, y)
    assert excess_profile_leq(x, y) == expected


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=6), st.data())
def test_robin_hood_is_majorized(x, data):
    s, t = data.draw(st.sampled_from([(i, j) for i in range(len(x)) for j in range(len(x))
                                      if x[j] >= x[i] and i != j] or [(0, 1)]))
    if x[t] < x[s]:
        return
    lam = data.draw(st.integers(0, x[t] - x[s]))
    assert majorizes(x, t_transform(x, s, t, lam))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-3, 3), min_size=n, max_size=n).map(tuple), min_size=1, max_size=8)))
def test_least_majorized_matches_pairwise(D):
    expected = {x for x in D if all(oracles.majorized(x, y) for y in D)}
    assert set(least_majorized_class(D)) == expected
    assert (least_majorized(D) is None) == (not expected)
