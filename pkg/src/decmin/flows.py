"""Convex-cost integer m-flows with potential-based dual certificates.

An m-flow ``x`` on a digraph satisfies ``inflow(v) - outflow(v) = m(v)`` at
every node. Each arc carries a discrete convex cost ``phi_e`` and optional
integer bounds ``lo <= x(e) <= hi``; the cost's effective domain acts as an
implicit bound as well.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

import networkx as nx

from .conjugate import INF, DiscreteConvexFn, from_descriptor, subgradient_interval
from .core import InfeasibleError, ConsistencyError


@dataclass(frozen=True)
class Arc:
    tail: str
    head: str
    cost: DiscreteConvexFn
    lo: Optional[int] = None
    hi: Optional[int] = None

    @property
    def f(self):
        """Effective lower bound (``-INF`` when absent)."""
        cands = [b for b in (self.lo, self.cost.lo) if b is not None]
        return max(cands) if cands else -INF

    @property
    def g(self):
        cands = [b for b in (self.hi, self.cost.hi) if b is not None]
        return min(cands) if cands else INF


@dataclass
class FlowNetwork:
    nodes: tuple
    arcs: tuple
    demand: tuple
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.nodes = tuple(str(v) for v in self.nodes)
        self.arcs = tuple(self.arcs)
        self.demand = tuple(int(v) for v in self.demand)
        self._index = {v: i for i, v in enumerate(self.nodes)}
        if len(self.demand) != len(self.nodes):
            raise ValueError("demand needs one value per node")
        if sum(self.demand) != 0:
            raise ValueError("demands must sum to zero")
        for a in self.arcs:
            if a.tail not in self._index or a.head not in self._index:
                raise ValueError(f"arc {a.tail}->{a.head} uses an unknown node")
            if a.lo is not None and a.hi is not None and a.lo > a.hi:
                raise ValueError(f"arc {a.tail}->{a.head} has lo > hi")

    def idx(self, v) -> int:
        return self._index[str(v)]

    def cost(self, x: Sequence[int]):
        total = 0
        for a, v in zip(self.arcs, x):
            c = a.cost(v)
            if c == INF or not a.f <= v <= a.g:
                return INF
            total += c
        return total

    def excess(self, x: Sequence[int]) -> list:
        """``inflow - outflow`` per node."""
        ex = [0] * len(self.nodes)
        for a, v in zip(self.arcs, x):
            ex[self.idx(a.head)] += v
            ex[self.idx(a.tail)] -= v
        return ex

    def is_feasible(self, x: Sequence[int]) -> bool:
        return self.excess(x) == list(self.demand) and self.cost(x) != INF

    @classmethod
    def from_json(cls, data: dict) -> "FlowNetwork":
        nodes = [str(v) for v in data["nodes"]]
        arcs = [Arc(str(a["tail"]), str(a["head"]), from_descriptor(a.get("cost", {"kind": "square"})),
                    a.get("lo"), a.get("hi")) for a in data["arcs"]]
        dem = data.get("demand", {})
        return cls(tuple(nodes), tuple(arcs), tuple(int(dem.get(v, 0)) for v in nodes))

    def to_json(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "arcs": [{"tail": a.tail, "head": a.head, "lo": a.lo, "hi": a.hi,
                      "cost": a.cost.to_descriptor()} for a in self.arcs],
            "demand": {v: d for v, d in zip(self.nodes, self.demand)},
        }


# --------------------------------------------------------------------------
# feasibility


@dataclass
class FeasibilityReport:
    feasible: bool
    flow: Optional[tuple]
    cut: Optional[list]      # violating node set Z
    inflow_bound: object = None
    required: object = None


def _base_value(a: Arc) -> int:
    if a.f != -INF:
        return a.f
    if a.g != INF:
        return a.g
    return 0


def hoffman_bound(net: FlowNetwork, Z: set):
    """``rho_g(Z) - delta_f(Z)``: the largest possible net inflow into ``Z``."""
    total = 0
    for a in net.arcs:
        if a.head in Z and a.tail not in Z:
            total += a.g
        elif a.tail in Z and a.head not in Z:
            total -= a.f
    return total


def hoffman_feasible(net: FlowNetwork) -> FeasibilityReport:
    """Decide feasibility by a max-flow reduction; return a violating cut if none."""
    base = [_base_value(a) for a in net.arcs]
    ex = net.excess(base)
    need = [d - e for d, e in zip(net.demand, ex)]
    G = nx.DiGraph()
    S, T = ("__source",), ("__sink",)
    G.add_node(S)
    G.add_node(T)
    G.add_nodes_from(net.nodes)

    def add_cap(u, v, c):
        if G.has_edge(u, v):
            old = G[u][v].get("capacity", INF)
            c = INF if INF in (old, c) else old + c
        if c == INF:
            G.add_edge(u, v)
            G[u][v].pop("capacity", None)
        else:
            G.add_edge(u, v, capacity=c)

    for a, b in zip(net.arcs, base):
        up, down = a.g - b, b - a.f
        if up > 0:
            add_cap(a.tail, a.head, up)
        if down > 0:
            add_cap(a.head, a.tail, down)
    supply = 0
    for v, r in zip(net.nodes, need):
        if r < 0:
            add_cap(S, v, -r)
        elif r > 0:
            add_cap(v, T, r)
            supply += r
    value, flow = nx.maximum_flow(G, S, T)
    if value < supply:
        _, (side_s, side_t) = nx.minimum_cut(G, S, T)
        Z = sorted(v for v in side_t if v in net._index)
        return FeasibilityReport(False, None, Z, hoffman_bound(net, set(Z)),
                                 sum(net.demand[net.idx(v)] for v in Z))
    # split aggregated pair flows back onto the arcs
    remaining = {(u, v): flow[u][v] for u in flow for v in flow[u]}
    x = list(base)
    for i, (a, b) in enumerate(zip(net.arcs, base)):
        fwd = remaining.get((a.tail, a.head), 0)
        take = min(fwd, a.g - b)
        if take > 0:
            x[i] += take
            remaining[(a.tail, a.head)] = fwd - take
    for i, (a, b) in enumerate(zip(net.arcs, base)):
        bwd = remaining.get((a.head, a.tail), 0)
        take = min(bwd, b - a.f)
        if take > 0:
            x[i] -= take
            remaining[(a.head, a.tail)] = bwd - take
    x = tuple(int(v) for v in x)
    if not net.is_feasible(x):
        raise ConsistencyError("max-flow decomposition produced an infeasible flow")
    return FeasibilityReport(True, x, None)


# --------------------------------------------------------------------------
# optimization


def _residual(net: FlowNetwork, x: Sequence[int]) -> list:
    """Residual edges ``(u, v, cost, arc index, direction)`` with marginal costs."""
    edges = []
    for i, (a, v) in enumerate(zip(net.arcs, x)):
        u, w = net.idx(a.tail), net.idx(a.head)
        c0 = a.cost(v)
        if v + 1 <= a.g:
            edges.append((u, w, a.cost(v + 1) - c0, i, 1))
        if v - 1 >= a.f:
            edges.append((w, u, a.cost(v - 1) - c0, i, -1))
    return edges


def _bellman_ford(n: int, edges: list):
    """Distances from a virtual source joined to every node, or a negative cycle."""
    dist = [0] * n
    pred = [None] * n
    last = None
    for _ in range(n):
        last = None
        for e in edges:
            u, v, c = e[0], e[1], e[2]
            if dist[u] + c < dist[v]:
                dist[v] = dist[u] + c
                pred[v] = e
                last = v
        if last is None:
            return dist, None
    # a relaxation in round n means a negative cycle; walk back into it
    v = last
    for _ in range(n):
        v = pred[v][0]
    cycle, u = [], v
    while True:
        e = pred[u]
        cycle.append(e)
        u = e[0]
        if u == v:
            break
    return dist, cycle[::-1]


def min_cost_mflow(net: FlowNetwork, start: Optional[Sequence[int]] = None,
                   max_iter: int = 100000) -> tuple:
    """Optimal integer flow by unit negative-cycle canceling."""
    if start is None:
        rep = hoffman_feasible(net)
        if not rep.feasible:
            raise InfeasibleError(f"no feasible flow; violating set {rep.cut}")
        x = list(rep.flow)
    else:
        x = list(start)
    n = len(net.nodes)
    for _ in range(max_iter):
        _, cycle = _bellman_ford(n, _residual(net, x))
        if cycle is None:
            return tuple(x)
        for _, _, _, i, d in cycle:
            x[i] += d
    raise ConsistencyError("cycle canceling did not converge (cost unbounded below?)")


# --------------------------------------------------------------------------
# certificates


@dataclass
class FlowCertificate:
    x: tuple
    pi: tuple
    tau1: tuple
    tau2: tuple
    primal: object
    dual: object
    gap: object
    kilter: bool
    subgradient: bool

    def to_json(self, net: FlowNetwork) -> dict:
        return {"x": list(self.x), "pi": dict(zip(net.nodes, self.pi)),
                "tau1": list(self.tau1), "tau2": list(self.tau2),
                "primal": self.primal, "dual": self.dual, "gap": self.gap,
                "kilter": self.kilter}


def _bound_term(f, g, t):
    """``max(f*t, g*t)`` with infinite bounds; ``t = 0`` contributes 0."""
    if t == 0:
        return 0
    return g * t if t > 0 else f * t


def split_dual_value(net: FlowNetwork, pi, tau1, tau2):
    total = sum(p * m for p, m in zip(pi, net.demand))
    for a, t1, t2 in zip(net.arcs, tau1, tau2):
        w = a.cost.conjugate(t1)
        lo = -INF if a.lo is None else a.lo
        hi = INF if a.hi is None else a.hi
        b = _bound_term(lo, hi, t2)
        if w == INF or b == INF:
            return -INF
        total -= w + b
    return total


def potential_dual_value(net: FlowNetwork, pi):
    """Dual without explicit bounds: ``pi m - sum psi_e(pi(head) - pi(tail))``."""
    total = sum(p * m for p, m in zip(pi, net.demand))
    for a in net.arcs:
        w = a.cost.conjugate(pi[net.idx(a.head)] - pi[net.idx(a.tail)])
        if w == INF:
            return -INF
        total -= w
    return total


def kilter_ok(net: FlowNetwork, x, tau2) -> bool:
    for a, v, t in zip(net.arcs, x, tau2):
        lo = a.lo if a.lo is not None else -INF
        hi = a.hi if a.hi is not None else INF
        if t > 0 and v != hi:
            return False
        if t < 0 and v != lo:
            return False
    return True


def flow_certificate(net: FlowNetwork, x: Sequence[int]) -> FlowCertificate:
    """Potentials from the residual graph, tension split by clamping."""
    x = tuple(x)
    if not net.is_feasible(x):
        raise InfeasibleError("flow is not feasible")
    dist, cycle = _bellman_ford(len(net.nodes), _residual(net, x))
    if cycle is not None:
        raise ConsistencyError(f"flow is not optimal: negative residual cycle {cycle}")
    base = min(dist)
    pi = tuple(d - base for d in dist)
    tau1, tau2 = [], []
    sub_ok = True
    for a, v in zip(net.arcs, x):
        t = pi[net.idx(a.head)] - pi[net.idx(a.tail)]
        lo, hi = subgradient_interval(a.cost, v)
        t1 = min(max(t, lo), hi)
        tau1.append(int(t1))
        tau2.append(int(t - t1))
        sub_ok &= lo <= t1 <= hi
    primal = net.cost(x)
    dual = split_dual_value(net, pi, tau1, tau2)
    gap = primal - dual if dual != -INF else INF
    cert = FlowCertificate(x, pi, tuple(tau1), tuple(tau2), primal, dual, gap,
                           kilter_ok(net, x, tau2), sub_ok)
    if gap != 0 or not cert.kilter:
        raise ConsistencyError(f"flow certificate failed: gap {gap}, kilter {cert.kilter}")
    return cert


def _sq(l: int) -> int:
    return (l // 2) * -(-l // 2)


@dataclass
class FlowMinmaxReport:
    primal: int
    formulas: dict
    holds: bool


def verify_flow_minmax(net: FlowNetwork, cert: Optional[FlowCertificate] = None
                       ) -> FlowMinmaxReport:
    """Evaluate the square-cost closed-form duals at the constructed potentials."""
    if any(a.cost.kind != "square" for a in net.arcs):
        raise ValueError("closed-form flow duals need square costs on every arc")
    if cert is None:
        cert = flow_certificate(net, min_cost_mflow(net))
    pi = cert.pi
    pim = sum(p * m for p, m in zip(pi, net.demand))
    tension = [pi[net.idx(a.head)] - pi[net.idx(a.tail)] for a in net.arcs]
    formulas = {}
    if all(a.lo is None and a.hi is None for a in net.arcs):
        formulas["uncapacitated"] = pim - sum(_sq(t) for t in tension)
    if all(a.lo == 0 and a.hi is None for a in net.arcs):
        formulas["nonnegative"] = pim - sum(_sq(max(t, 0)) for t in tension)
    formulas["capacitated"] = pim - sum(
        _sq(t1) + _bound_term(-INF if a.lo is None else a.lo, INF if a.hi is None else a.hi, t2)
        for a, t1, t2 in zip(net.arcs, cert.tau1, cert.tau2))
    holds = all(v == cert.primal for v in formulas.values())
    return FlowMinmaxReport(cert.primal, formulas, holds)


# --------------------------------------------------------------------------
# brute force and random instances


def brute_min_flow(net: FlowNetwork, limit: int = 2 * 10 ** 6):
    """Exhaustive minimum over integer flows in bounded networks.

    Non-tree arcs of a spanning forest are enumerated; tree arcs then follow
    from conservation by peeling leaves.
    """
    n = len(net.nodes)
    adj = [[] for _ in range(n)]
    for i, a in enumerate(net.arcs):
        adj[net.idx(a.tail)].append((i, net.idx(a.head)))
        adj[net.idx(a.head)].append((i, net.idx(a.tail)))
    seen = [False] * n
    order, parent_arc, tree = [], [None] * n, set()
    roots = []
    for r in range(n):
        if seen[r]:
            continue
        roots.append(r)
        seen[r] = True
        stack = [r]
        while stack:
            u = stack.pop()
            order.append(u)
            for i, w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    parent_arc[w] = i
                    tree.add(i)
                    stack.append(w)
    free = [i for i in range(len(net.arcs)) if i not in tree]
    ranges = []
    for i in free:
        a = net.arcs[i]
        if a.f == -INF or a.g == INF:
            raise ValueError("brute force needs finite bounds on non-tree arcs")
        ranges.append(range(int(a.f), int(a.g) + 1))
    total = 1
    for r in ranges:
        total *= len(r)
    if total > limit:
        raise ValueError(f"{total} assignments exceed the limit {limit}")
    best, arg = INF, []
    for vals in product(*ranges):
        x = [0] * len(net.arcs)
        for i, v in zip(free, vals):
            x[i] = v
        ex = [0] * n
        for i in free:
            a = net.arcs[i]
            ex[net.idx(a.head)] += x[i]
            ex[net.idx(a.tail)] -= x[i]
        ok = True
        for u in reversed(order):
            i = parent_arc[u]
            if i is None:
                continue
            a = net.arcs[i]
            missing = net.demand[u] - ex[u]
            val = missing if net.idx(a.head) == u else -missing
            x[i] = val
            ex[net.idx(a.head)] += val
            ex[net.idx(a.tail)] -= val
        if any(ex[r] != net.demand[r] for r in roots):
            ok = False
        if not ok:
            continue
        c = net.cost(x)
        if c < best:
            best, arg = c, [tuple(x)]
        elif c == best and c != INF:
            arg.append(tuple(x))
    return best, arg


def random_network(rng: random.Random, max_nodes: int = 6, max_arcs: int = 10,
                   width: int = 5, cost_pool: Optional[list] = None) -> FlowNetwork:
    """Random digraph with bounded arcs whose demand comes from a feasible flow."""
    from .conjugate import abs_, exp, intervaldist, piecelin2, pospart, square, table, wsquare
    pool = cost_pool or [square(), wsquare(2), abs_(1), pospart(0), intervaldist(-1, 1),
                         exp(1, 2), piecelin2(1, 3, 2), table(-2, [4, 1, 0, 1, 4, 9])]
    k = rng.randint(2, max_nodes)
    nodes = tuple(f"v{i + 1}" for i in range(k))
    arcs, x = [], []
    for _ in range(rng.randint(1, max_arcs)):
        u, v = rng.sample(nodes, 2)
        cost = rng.choice(pool)
        dlo = -3 if cost.lo is None else cost.lo
        lo = rng.randint(dlo, dlo + 2)
        hi = lo + rng.randint(0, width)
        if cost.hi is not None:
            hi = min(hi, cost.hi)
            lo = min(lo, hi)
        arcs.append(Arc(u, v, cost, lo, hi))
        x.append(rng.randint(lo, hi))
    ex = [0] * k
    for a, val in zip(arcs, x):
        ex[nodes.index(a.head)] += val
        ex[nodes.index(a.tail)] -= val
    return FlowNetwork(nodes, tuple(arcs), tuple(ex))
