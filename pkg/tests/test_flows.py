import random

import pytest

import oracles
from decmin.conjugate import abs_, square
from decmin.core import InfeasibleError
from decmin.flows import (
    Arc, FlowNetwork, brute_min_flow, flow_certificate, hoffman_bound, hoffman_feasible,
    kilter_ok, min_cost_mflow, random_network, verify_flow_minmax,
)


def net(nodes, arcs, demand):
    return FlowNetwork(tuple(nodes), tuple(arcs), tuple(demand))


PARALLEL = net("ab", [Arc("a", "b", square()), Arc("a", "b", square())], (-2, 2))


def test_network_validation():
    with pytest.raises(ValueError):
        net("ab", [Arc("a", "b", square())], (1, 0))
    with pytest.raises(ValueError):
        net("ab", [Arc("a", "c", square())], (0, 0))
    with pytest.raises(ValueError):
        net("ab", [Arc("a", "b", square(), 2, 1)], (0, 0))


def test_feasibility():
    assert hoffman_feasible(PARALLEL).feasible
    one = net("ab", [Arc("a", "b", square(), None, 1)], (-2, 2))
    rep = hoffman_feasible(one)
    assert not rep.feasible and rep.cut == ["b"]
    assert (rep.inflow_bound, rep.required) == (1, 2)
    assert hoffman_bound(one, {"b"}) == 1
    zero = net("ab", [Arc("a", "b", square(), -1, 1)], (0, 0))
    assert hoffman_feasible(zero).flow == (0,)


def test_min_cost_examples():
    x = min_cost_mflow(PARALLEL)
    assert x == (1, 1) and PARALLEL.cost(x) == 2
    path = net("abc", [Arc("a", "b", square()), Arc("b", "c", square())], (-1, 0, 1))
    assert min_cost_mflow(path) == (1, 1)
    shifted = net("ab", [Arc("a", "b", abs_(3))], (-3, 3))
    assert shifted.cost(min_cost_mflow(shifted)) == 0
    with pytest.raises(InfeasibleError):
        min_cost_mflow(net("ab", [Arc("a", "b", square(), None, 1)], (-2, 2)))


def test_certificate_examples():
    c = flow_certificate(PARALLEL, (1, 1))
    assert c.pi == (0, 1) and c.tau1 == (1, 1) and c.tau2 == (0, 0)
    assert c.dual == 2 and c.gap == 0
    zero = net("ab", [Arc("a", "b", square(), -1, 1)], (0, 0))
    c = flow_certificate(zero, (0,))
    assert c.pi == (0, 0) and c.gap == 0
    cap = net("ab", [Arc("a", "b", square(), 0, 1), Arc("a", "b", square(), 0, 5)], (-4, 4))
    c = flow_certificate(cap, min_cost_mflow(cap))
    assert c.x == (1, 3) and c.tau2[0] > 0 and c.kilter
    assert not kilter_ok(cap, (0, 4), c.tau2)


def test_closed_form_duals():
    rep = verify_flow_minmax(PARALLEL)
    assert rep.holds and rep.formulas["uncapacitated"] == 2
    nn = net("ab", [Arc("a", "b", square(), 0, None), Arc("b", "a", square(), 0, None)], (-2, 2))
    rep = verify_flow_minmax(nn)
    assert rep.holds and rep.formulas["nonnegative"] == 4
    empty = net("ab", [Arc("a", "b", square())], (0, 0))
    assert verify_flow_minmax(empty).formulas["uncapacitated"] == 0


def test_json_round_trip():
    again = FlowNetwork.from_json(PARALLEL.to_json())
    assert again.demand == PARALLEL.demand and min_cost_mflow(again) == (1, 1)


def test_random_against_oracle():
    rng = random.Random(3)
    for _ in range(40):
        N = random_network(rng, max_nodes=4, max_arcs=5, width=3)
        arcs = [(a.tail, a.head, int(a.f), int(a.g)) for a in N.arcs]
        flows = oracles.all_flows(arcs, N.nodes, N.demand)
        best = min(N.cost(x) for x in flows)
        assert brute_min_flow(N)[0] == best
        x = min_cost_mflow(N)
        assert N.cost(x) == best
        c = flow_certificate(N, x)
        assert c.gap == 0 and c.kilter and c.subgradient
