"""Separable convex minimization on an M-convex set with exact dual certificates.

The dual objective is ``g(pi) = p^(pi) - sum_s psi_s(pi(s))`` where ``p^`` is
the linear extension of ``p`` and ``psi_s`` the conjugate of ``phi_s``.
A primal-dual pair has zero gap exactly when ``pi(s)`` is a subgradient of
``phi_s`` at ``x(s)`` and ``x`` minimizes ``pi`` over the set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

import networkx as nx
import numpy as np

from .conjugate import INF, DiscreteConvexFn, intervaldist, square, subgradient_interval
from .core import ConsistencyError, InfeasibleError, exchange
from .decmin import decmin_local_search
from .mconvex import contains, enumerate_points, exchange_matrix, greedy_vertex, brute_min
from .partition import canonical_decomposition
from .setfn import SetFunction, lovasz_ext


# --------------------------------------------------------------------------
# objectives


class SeparableObjective:
    """``Phi(x) = sum_s phi_s(x(s))``."""

    def __init__(self, phis: Sequence[DiscreteConvexFn]):
        self.phis = tuple(phis)

    @classmethod
    def uniform(cls, phi: DiscreteConvexFn, n: int) -> "SeparableObjective":
        return cls([phi] * n)

    @classmethod
    def square(cls, n: int) -> "SeparableObjective":
        return cls.uniform(square(), n)

    def __len__(self):
        return len(self.phis)

    def __call__(self, x: Sequence[int]):
        total = 0
        for phi, v in zip(self.phis, x):
            fv = phi(v)
            if fv == INF:
                return INF
            total += fv
        return total

    def conj(self, pi: Sequence[int]):
        total = 0
        for phi, l in zip(self.phis, pi):
            w = phi.conjugate(l)
            if w == INF:
                return INF
            total += w
        return total

    def domain_distance(self) -> "SeparableObjective":
        """Separable distance of each coordinate to its effective domain."""
        big = 10 ** 18
        return SeparableObjective([
            intervaldist(-big if f.lo is None else f.lo, big if f.hi is None else f.hi)
            for f in self.phis])


@dataclass
class Certificate:
    x: tuple
    pi: tuple
    primal: object
    dual: object
    gap: object
    young_slack: object = None     # sum of Fenchel-Young slacks
    linear_slack: object = None    # pi x - p^(pi)

    @property
    def optimal(self) -> bool:
        return self.gap == 0

    def to_json(self, ground) -> dict:
        return {"x": ground.as_dict(self.x), "pi": ground.as_dict(self.pi),
                "primal": self.primal, "dual": self.dual, "gap": self.gap}


# --------------------------------------------------------------------------
# primal


def _descend(p: SetFunction, m: tuple, obj: SeparableObjective) -> tuple:
    """Steepest improving single exchange until none improves."""
    phis = obj.phis
    n = p.n
    while True:
        feas = exchange_matrix(p, m)
        best = None
        for s in range(n):
            up = phis[s](m[s] + 1) - phis[s](m[s]) if phis[s](m[s] + 1) != INF else INF
            if up == INF:
                continue
            for t in range(n):
                if not feas[s][t]:
                    continue
                down = phis[t](m[t] - 1)
                if down == INF:
                    continue
                delta = up + down - phis[t](m[t])
                if delta < 0 and (best is None or delta < best[0]):
                    best = (delta, s, t)
        if best is None:
            return m
        m = exchange(m, best[1], best[2])


def minimize_separable(p: SetFunction, obj: SeparableObjective,
                       start: Optional[Sequence[int]] = None) -> tuple:
    """A minimizer of ``obj`` over the M-convex set of ``p``.

    Exchange descent is exact for separable convex objectives: a point with
    no improving single exchange is a global minimizer. An infeasible seed
    is first moved into the effective domain by the same descent applied to
    the distance-to-domain objective.
    """
    if len(obj) != p.n:
        raise ValueError("objective length differs from the ground set")
    m = tuple(start) if start is not None else greedy_vertex(p)
    if not contains(p, m):
        raise InfeasibleError(f"{m} is not in the M-convex set")
    if obj(m) == INF:
        dist = obj.domain_distance()
        m = _descend(p, m, dist)
        if dist(m) != 0:
            raise InfeasibleError("no point of the set has finite cost")
    return _descend(p, m, obj)


# --------------------------------------------------------------------------
# dual


def dual_value(p: SetFunction, obj: SeparableObjective, pi: Sequence[int]):
    c = obj.conj(pi)
    if c == INF:
        return -INF
    return lovasz_ext(p, pi) - c


def certificate(p: SetFunction, obj: SeparableObjective, x: Sequence[int],
                pi: Sequence[int]) -> Certificate:
    """Evaluate both sides and the two nonnegative slack terms."""
    x, pi = tuple(x), tuple(pi)
    primal = obj(x)
    dual = dual_value(p, obj, pi)
    lin = sum(a * b for a, b in zip(x, pi)) - lovasz_ext(p, pi)
    conj = obj.conj(pi)
    young = INF if INF in (primal, conj) else primal + conj - sum(a * b for a, b in zip(x, pi))
    gap = INF if INF in (primal, -dual) else primal - dual
    return Certificate(x, pi, primal, dual, gap, young, lin)


def _solve_differences(n: int, lo: Sequence, hi: Sequence, geq_pairs, which: str = "min"):
    """Integer ``pi`` with ``lo <= pi <= hi`` and ``pi[s] >= pi[t]`` for each pair.

    Returns the componentwise-least solution when every coordinate is bounded
    below through the constraints, else a feasible one anchored at 0.
    Raises :class:`InfeasibleError` carrying a negative cycle if none exists.
    """
    z = "z"
    G = nx.DiGraph()
    G.add_nodes_from(range(n))
    G.add_node(z)

    def edge(u, v, w):
        # encodes pi[v] - pi[u] <= w
        if G.has_edge(u, v):
            w = min(w, G[u][v]["weight"])
        G.add_edge(u, v, weight=w)

    for s in range(n):
        if hi[s] != INF:
            edge(z, s, hi[s])
        if lo[s] != -INF:
            edge(s, z, -lo[s])
    for s, t in geq_pairs:
        edge(s, t, 0)

    src = "r"
    G.add_node(src)
    for v in list(G.nodes):
        if v != src:
            G.add_edge(src, v, weight=0)
    try:
        d = nx.single_source_bellman_ford_path_length(G, src)
    except nx.NetworkXUnbounded:
        cycle = nx.find_negative_cycle(G, src)
        raise InfeasibleError(f"dual constraints contain a negative cycle: {cycle}")
    G.remove_node(src)

    rev = G.reverse(copy=True)
    to_z = nx.single_source_bellman_ford_path_length(rev, z)
    from_z = nx.single_source_bellman_ford_path_length(G, z)
    if which == "min" and all(s in to_z for s in range(n)):
        return tuple(-int(to_z[s]) for s in range(n))
    if which == "max" and all(s in from_z for s in range(n)):
        return tuple(int(from_z[s]) for s in range(n))
    return tuple(int(d[s] - d[z]) for s in range(n))


def optimality_system(p: SetFunction, obj: SeparableObjective, x: Sequence[int]):
    """Bounds and ordering pairs whose solutions are exactly the dual optima."""
    n = p.n
    lo, hi = [], []
    for s in range(n):
        a, b = subgradient_interval(obj.phis[s], x[s])
        lo.append(a)
        hi.append(b)
    feas = exchange_matrix(p, x)
    pairs = [(s, t) for s in range(n) for t in range(n) if feas[s][t]]
    return lo, hi, pairs


def dual_certificate(p: SetFunction, obj: SeparableObjective, x: Sequence[int],
                     which: str = "min") -> Certificate:
    """Build ``pi`` certifying ``x`` via a difference-constraint system."""
    x = tuple(x)
    if not contains(p, x):
        raise InfeasibleError(f"{x} is not in the M-convex set")
    if obj(x) == INF:
        raise InfeasibleError(f"{x} has infinite cost")
    lo, hi, pairs = optimality_system(p, obj, x)
    pi = _solve_differences(p.n, lo, hi, pairs, which)
    cert = certificate(p, obj, x, pi)
    if cert.gap != 0:
        raise ConsistencyError(f"certificate for {x} has gap {cert.gap}")
    return cert


def solve(p: SetFunction, obj: SeparableObjective) -> Certificate:
    return dual_certificate(p, obj, minimize_separable(p, obj))


# --------------------------------------------------------------------------
# square-sum specialization


def square_conj(l: int) -> int:
    return (l // 2) * -(-l // 2)


def sqsum_dual(p: SetFunction, pi: Sequence[int]) -> int:
    return lovasz_ext(p, pi) - sum(square_conj(v) for v in pi)


def sqsum_minmax(p: SetFunction) -> Certificate:
    """Square-sum min-max with the canonical dual ``pi*``."""
    m = decmin_local_search(p)
    can = canonical_decomposition(p)
    obj = SeparableObjective.square(p.n)
    cert = certificate(p, obj, m, can.pi_star)
    if cert.gap != 0:
        raise ConsistencyError(f"square-sum gap {cert.gap} at pi*={can.pi_star}")
    least = dual_certificate(p, obj, m, which="min").pi
    if least != can.pi_star:
        raise ConsistencyError(f"least dual optimum {least} differs from pi*={can.pi_star}")
    return cert


@dataclass
class DualSetDescription:
    """Dual optima of the square-sum problem, block by block."""

    betas: tuple
    blocks: tuple            # S_i
    F: tuple                 # largest member of each family F_i
    A: tuple                 # ordering pairs per block
    families: tuple = field(repr=False, default=())

    def contains(self, pi: Sequence[int]) -> bool:
        for beta, S, F, A in zip(self.betas, self.blocks, self.F, self.A):
            base = 2 * beta - 1
            for s in range(len(pi)):
                if not S >> s & 1:
                    continue
                if F >> s & 1:
                    if not base <= pi[s] <= base + 2:
                        return False
                elif pi[s] != base:
                    return False
            if any(pi[s] < pi[t] for s, t in A):
                return False
        return True

    def to_json(self, ground) -> dict:
        return {
            "betas": list(self.betas),
            "blocks": [ground.members(S) for S in self.blocks],
            "F": [ground.members(F) for F in self.F],
            "A": [[[ground.labels[s], ground.labels[t]] for s, t in A] for A in self.A],
        }


def dual_optimal_set(p: SetFunction) -> DualSetDescription:
    can = canonical_decomposition(p)
    vals = p.table()
    prev = 0
    Fs, As, fams = [], [], []
    for beta, C, S in zip(can.betas, can.chain, can.partition):
        fam = []
        X = S
        while True:
            if beta * bin(X).count("1") == vals[prev | X] - vals[prev]:
                fam.append(X)
            if X == 0:
                break
            X = (X - 1) & S
        F = 0
        for X in fam:
            F |= X
        if F not in fam:
            raise ConsistencyError("tight family is not closed under union")
        members = [s for s in range(p.n) if F >> s & 1]
        A = [(s, t) for s in members for t in members if s != t
             and not any(X >> t & 1 and not X >> s & 1 for X in fam)]
        Fs.append(F)
        As.append(tuple(A))
        fams.append(tuple(sorted(fam)))
        prev = C
    return DualSetDescription(can.betas, can.partition, tuple(Fs), tuple(As), tuple(fams))


def _lovasz_batch(p: SetFunction, P: np.ndarray) -> np.ndarray:
    """Linear extension for each row of an integer matrix."""
    vals = np.asarray(p.table(), dtype=np.int64)
    rows, n = P.shape
    order = np.argsort(-P, axis=1, kind="stable")
    sortedP = np.take_along_axis(P, order, axis=1)
    masks = np.cumsum(np.left_shift(1, order), axis=1)
    pv = vals[masks]
    nxt = np.concatenate([sortedP[:, 1:], np.zeros((rows, 1), dtype=P.dtype)], axis=1)
    return (pv * (sortedP - nxt)).sum(axis=1)


def brute_dual_optima(p: SetFunction, box: tuple, limit: int = 10 ** 6):
    """Maximum of the square-sum dual and all maximizers in ``box`` per coordinate."""
    lo, hi = box
    width = hi - lo + 1
    if width ** p.n > limit:
        raise ValueError(f"box has {width ** p.n} candidates, above {limit}")
    grid = np.array(list(product(range(lo, hi + 1), repeat=p.n)), dtype=np.int64)
    g = _lovasz_batch(p, grid) - ((grid // 2) * -(-grid // 2)).sum(axis=1)
    best = int(g.max())
    return best, [tuple(int(v) for v in row) for row in grid[g == best]]


def primal_optimal_set(p: SetFunction, pi: Sequence[int], points=None) -> list:
    """Points rounding ``pi/2`` that also minimize ``pi`` over the set."""
    pts = points if points is not None else enumerate_points(p)
    target = lovasz_ext(p, pi)
    out = []
    for m in sorted(pts):
        if all(v in (l // 2, -(-l // 2)) for v, l in zip(m, pi)) and \
                sum(a * b for a, b in zip(m, pi)) == target:
            out.append(m)
    return out


def is_l_optimal(p: SetFunction, obj: SeparableObjective, pi: Sequence[int]) -> bool:
    """No improvement of ``g`` by adding or subtracting any ``chi_Y``."""
    g0 = dual_value(p, obj, pi)
    n = p.n
    for Y in range(1, 1 << n):
        for sign in (1, -1):
            q = tuple(v + sign * (Y >> s & 1) for s, v in enumerate(pi))
            if dual_value(p, obj, q) > g0:
                return False
    return True


# --------------------------------------------------------------------------
# intersection of two M-convex sets


@dataclass
class IntersectionCertificate:
    x: tuple
    pi1: tuple
    pi2: tuple
    primal: object
    dual: object
    gap: object
    conditions: dict

    @property
    def conditions_hold(self) -> bool:
        return all(self.conditions.values())


def minimize_over_intersection(p1: SetFunction, p2: SetFunction, obj: SeparableObjective):
    """Brute-force minimum over the common points; ``(INF, [])`` if there are none."""
    common = enumerate_points(p1) & enumerate_points(p2)
    if not common:
        return INF, []
    return brute_min(p1, obj, points=common)


def intersection_dual_value(p1, p2, obj: SeparableObjective, pi1, pi2):
    sigma = tuple(a + b for a, b in zip(pi1, pi2))
    c = obj.conj(sigma)
    if c == INF:
        return -INF
    return lovasz_ext(p1, pi1) + lovasz_ext(p2, pi2) - c


def verify_intersection_certificate(p1, p2, obj: SeparableObjective, x, pi1, pi2
                                    ) -> IntersectionCertificate:
    x, pi1, pi2 = tuple(x), tuple(pi1), tuple(pi2)
    feasible = contains(p1, x) and contains(p2, x)
    primal = obj(x)
    dual = intersection_dual_value(p1, p2, obj, pi1, pi2)
    conds = {"feasible": feasible}
    if feasible and primal != INF:
        conds["subgradient"] = all(
            lo <= a + b <= hi
            for phi, v, a, b in zip(obj.phis, x, pi1, pi2)
            for lo, hi in [subgradient_interval(phi, v)])
        conds["pi1_minimizer"] = sum(a * b for a, b in zip(pi1, x)) == lovasz_ext(p1, pi1)
        conds["pi2_minimizer"] = sum(a * b for a, b in zip(pi2, x)) == lovasz_ext(p2, pi2)
    else:
        conds["subgradient"] = conds["pi1_minimizer"] = conds["pi2_minimizer"] = False
    if feasible and primal != INF and dual != -INF:
        gap = primal - dual
    else:
        gap = INF
    return IntersectionCertificate(x, pi1, pi2, primal, dual, gap, conds)
