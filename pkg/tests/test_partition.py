from fractions import Fraction

import pytest

import oracles
from decmin.core import GroundSet
from decmin.instances import four_element, two_element
from decmin.partition import (
    _canonical_by_jumps, _canonical_iterative, canonical_decomposition, largest_maximizer,
    maximizers, principal_decomposition, relate_partitions, smallest_maximizer,
)
from decmin.setfn import modular

H = Fraction(1, 2)


def test_maximizers_examples():
    q = four_element()
    assert smallest_maximizer(q, 1) == 0b0011
    assert smallest_maximizer(q, 0) == 0b1111
    assert smallest_maximizer(q, 100) == 0
    assert largest_maximizer(q, 3 * H) == 0b0011
    assert maximizers(q, 3 * H) == [0, 0b0011]
    assert largest_maximizer(q, H) == 0b1111
    assert largest_maximizer(q, 100) == 0


def test_canonical_examples():
    c = canonical_decomposition(two_element())
    assert c.betas == (2,) and c.chain == (0b11,)
    assert c.pi_star == (3, 3) and c.delta_star == (1, 1)
    c = canonical_decomposition(four_element())
    assert c.betas == (2, 1)
    assert c.partition == (0b0011, 0b1100)
    assert c.chain == (0b0011, 0b1111)
    assert c.pi_star == (3, 3, 1, 1)
    assert c.to_json()["chain"] == [["s1", "s2"], ["s1", "s2", "s3", "s4"]]


def test_principal_examples():
    d = principal_decomposition(four_element())
    assert d.lambdas == (3 * H, H) and d.partition == (0b0011, 0b1100)
    d = principal_decomposition(two_element())
    assert d.lambdas == (3 * H,) and d.chain == (0b11,)


def test_modular_level_sets():
    p = modular(GroundSet.of_size(4), (5, 2, 5, -1))
    c = canonical_decomposition(p)
    assert c.betas == (5, 2, -1)
    assert c.partition == (0b0101, 0b0010, 0b1000)
    assert principal_decomposition(p).lambdas == (5, 2, -1)


def test_relation_examples():
    q = four_element()
    rep = relate_partitions(canonical_decomposition(q), principal_decomposition(q))
    assert rep.ok and rep.index_map == [[1], [2]]
    p = two_element()
    rep = relate_partitions(canonical_decomposition(p), principal_decomposition(p))
    assert rep.ok


def test_against_oracle(small_instances):
    for p in small_instances:
        vals, n = p.table(), p.n
        assert _canonical_iterative(p) == _canonical_by_jumps(p)
        c = canonical_decomposition(p)
        # C_j is the smallest maximizer at beta_j - 1
        for beta, C in zip(c.betas, c.chain):
            assert C == oracles.L(vals, n, beta - 1)
        pts = oracles.points(vals, n)
        for m in oracles.dec_min(pts):
            for beta, block in zip(c.betas, c.partition):
                assert all(m[s] in (beta, beta - 1) for s in range(n) if block >> s & 1)
        d = principal_decomposition(p)
        mn = oracles.min_norm_rational(vals, n, pts)
        for lam, block in zip(d.lambdas, d.partition):
            assert all(mn[s] == lam for s in range(n) if block >> s & 1)
        assert relate_partitions(c, d).ok
        assert sorted({-(-lam.numerator // lam.denominator) for lam in d.lambdas},
                      reverse=True) == list(c.betas)
