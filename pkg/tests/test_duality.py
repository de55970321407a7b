import random

import numpy as np
import pytest

import oracles
from decmin.checks import random_cost, separable_checks
from decmin.conjugate import INF, intervaldist, pospart, square, table
from decmin.core import GroundSet, InfeasibleError
from decmin.duality import (
    SeparableObjective, _lovasz_batch, brute_dual_optima, certificate, dual_certificate,
    dual_optimal_set, dual_value, intersection_dual_value, is_l_optimal, minimize_over_intersection,
    minimize_separable, primal_optimal_set, sqsum_dual, sqsum_minmax,
    verify_intersection_certificate,
)
from decmin.instances import crossing_pair, four_element, two_element
from decmin.mconvex import brute_min, enumerate_points, greedy_vertex
from decmin.setfn import modular

DECMIN4 = [(1, 2, 0, 1), (1, 2, 1, 0), (2, 1, 0, 1), (2, 1, 1, 0)]


def test_minimize_examples():
    q = four_element()
    sq = SeparableObjective.square(4)
    assert sq(minimize_separable(q, sq)) == 6
    pp = SeparableObjective.uniform(pospart(1), 2)
    assert pp(minimize_separable(two_element(), pp)) == 1


def test_linear_objective_reduces_to_greedy():
    q = four_element()
    pi = (3, -1, 2, 0)
    # slope pi(s) on a long window around the set
    obj = SeparableObjective([table(-10, [c * k for k in range(-10, 11)]) for c in pi])
    x = minimize_separable(q, obj)
    g = greedy_vertex(q, pi)
    assert obj(x) == obj(g) == sum(a * b for a, b in zip(g, pi))


def test_dual_values():
    sq2, sq4 = SeparableObjective.square(2), SeparableObjective.square(4)
    assert dual_value(two_element(), sq2, (3, 3)) == 5
    assert dual_value(four_element(), sq4, (3, 3, 1, 1)) == 6
    assert dual_value(four_element(), sq4, (0, 0, 0, 0)) == 0
    assert sqsum_dual(four_element(), (3, 3, 1, 1)) == 6


def test_certificates():
    c = dual_certificate(two_element(), SeparableObjective.square(2), (2, 1))
    assert c.pi == (3, 3) and c.gap == 0
    c = dual_certificate(four_element(), SeparableObjective.square(4), (2, 1, 1, 0))
    assert c.pi == (3, 3, 1, 1) and c.gap == 0
    m = modular(GroundSet.of_size(3), (2, -1, 0))
    c = dual_certificate(m, SeparableObjective.square(3), (2, -1, 0))
    assert c.gap == 0
    with pytest.raises(InfeasibleError):
        dual_certificate(two_element(), SeparableObjective.square(2), (3, 0))
    bad = certificate(four_element(), SeparableObjective.square(4), (2, 2, 0, 0), (3, 3, 1, 1))
    assert bad.gap == 2 and bad.young_slack + bad.linear_slack == 2


def test_sqsum_minmax():
    c = sqsum_minmax(two_element())
    assert (c.primal, c.dual, c.pi) == (5, 5, (3, 3))
    c = sqsum_minmax(four_element())
    assert (c.primal, c.dual, c.pi) == (6, 6, (3, 3, 1, 1))
    c = sqsum_minmax(modular(GroundSet.of_size(3), (3, 0, -2)))
    assert c.primal == 13 and c.pi == (5, -1, -5)


def test_dual_set_examples():
    d = dual_optimal_set(four_element())
    assert d.contains((3, 3, 1, 1))
    assert not d.contains((3, 3, 0, 1))
    best, opt = brute_dual_optima(two_element(), (-2, 6))
    assert best == 5
    assert tuple(min(c) for c in zip(*opt)) == (3, 3)
    assert primal_optimal_set(four_element(), (3, 3, 1, 1)) == DECMIN4
    assert primal_optimal_set(two_element(), (3, 3)) == [(1, 2), (2, 1)]


def test_batch_lovasz_matches_oracle(small_instances):
    rng = np.random.default_rng(0)
    for p in small_instances[:15]:
        P = rng.integers(-7, 8, size=(20, p.n))
        got = _lovasz_batch(p, P)
        vals = p.table()
        for row, v in zip(P, got):
            assert int(v) == oracles.lovasz_by_permutation(vals, p.n, [int(a) for a in row])


def test_dual_set_against_scan(small_instances):
    for p in small_instances:
        if p.n > 4:
            continue
        dm = oracles.dec_min(oracles.points(p.table(), p.n))
        lo = 2 * min(min(m) for m in dm) - 3
        hi = 2 * max(max(m) for m in dm) + 3
        best, opt = brute_dual_optima(p, (lo, hi))
        assert best == sqsum_minmax(p).primal
        desc = dual_optimal_set(p)
        opt = set(opt)
        for pi in opt:
            assert desc.contains(pi)
        # everything the description admits is optimal
        for pi in np.array(np.meshgrid(*[range(lo, hi + 1)] * p.n)).T.reshape(-1, p.n):
            pi = tuple(int(v) for v in pi)
            assert desc.contains(pi) == (pi in opt)
        for a in opt:
            for b in opt:
                assert tuple(map(min, a, b)) in opt and tuple(map(max, a, b)) in opt


def test_separable_random(small_instances):
    rng = random.Random(11)
    for p in small_instances:
        for _ in range(3):
            obj = SeparableObjective([random_cost(rng) for _ in range(p.n)])
            assert separable_checks(p, obj)
            best, _ = brute_min(p, obj)
            if best != INF:
                pi = dual_certificate(p, obj, minimize_separable(p, obj)).pi
                assert is_l_optimal(p, obj, pi)


def test_restricted_domains():
    q = four_element()
    obj = SeparableObjective([table(2, [0]), intervaldist(0, 1), square(), square()])
    x = minimize_separable(q, obj)
    assert x[0] == 2 and obj(x) == brute_min(q, obj)[0] == 1


def test_intersection_examples():
    p = two_element()
    sq = SeparableObjective.square(2)
    assert minimize_over_intersection(p, p, sq)[0] == 5
    p1, p2 = crossing_pair()
    sq4 = SeparableObjective.square(4)
    assert minimize_over_intersection(p1, p2, sq4) == (4, [(1, -1, 1, 1), (2, 0, 0, 0)])
    far = modular(p1.ground, (9, 9, 9, 9))
    assert minimize_over_intersection(p1, far, sq4) == (INF, [])

    c = verify_intersection_certificate(p, p, sq, (2, 1), (3, 3), (0, 0))
    assert c.gap == 0 and c.conditions_hold
    c = verify_intersection_certificate(p, p, sq, (2, 1), (0, 0), (0, 0))
    assert c.gap == 5 and not c.conditions_hold
    c = verify_intersection_certificate(p, p, sq, (3, 0), (3, 3), (0, 0))
    assert not c.conditions["feasible"]


def test_intersection_certificate_for_crossing_pair():
    p1, p2 = crossing_pair()
    sq4 = SeparableObjective.square(4)
    for x in [(1, -1, 1, 1), (2, 0, 0, 0)]:
        c = verify_intersection_certificate(p1, p2, sq4, x, (2, 0, 2, 0), (1, -1, -1, 1))
        assert c.gap == 0 and c.conditions_hold
    assert intersection_dual_value(p1, p2, sq4, (0,) * 4, (0,) * 4) == 0
