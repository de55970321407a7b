"""Exhaustive per-instance cross-checks shared by the CLI self-test."""

from __future__ import annotations

import random

from .conjugate import (
    INF, abs_, biconjugate_on_window, brute_conjugate, exp, intervaldist, piecelin2,
    pospart, power, square, subgradient_interval, table, translate, wsquare,
)
from .continuous import continuous_sqsum_duality, convex_combination_check, proximity_check, relax_decmin
from .core import square_sum
from .decmin import (
    beta1, decmin_brute, decmin_local_search, decmin_set, find_1tightening,
    min_total_excess, r1, theta_counts,
)
from .duality import SeparableObjective, dual_certificate, minimize_separable, sqsum_minmax
from .flows import brute_min_flow, flow_certificate, min_cost_mflow, random_network
from .majorize import dec_key, inc_max_class, least_majorized_class
from .mconvex import brute_min, enumerate_points
from .partition import canonical_decomposition, principal_decomposition, relate_partitions
from .setfn import SetFunction


def instance_checks(p: SetFunction) -> dict:
    """Run every exact identity on one instance; values are booleans."""
    out = {}
    pts = enumerate_points(p)
    dm = set(decmin_brute(p, pts))
    local = decmin_local_search(p)
    out["local_search"] = dec_key(local) == dec_key(next(iter(dm)))
    _, sq_arg = brute_min(p, square_sum, points=pts)
    out["classes"] = (dm == set(least_majorized_class(pts)) == set(inc_max_class(pts))
                      == set(sq_arg))
    out["tightening"] = all((find_1tightening(p, m) is None) == (m in dm) for m in pts)
    cert = sqsum_minmax(p)
    out["sqsum_duality"] = cert.gap == 0 and cert.primal == square_sum(local)
    can = canonical_decomposition(p)
    ok = True
    for a in range(can.betas[-1] - 2, can.betas[0] + 3):
        lhs, rhs, _ = min_total_excess(p, a, local)
        ok &= lhs == rhs
    ok &= min_total_excess(p, beta1(p) - 1, local)[0] == r1(p)
    counts = theta_counts(p, check=False)
    ok &= all(_hist(m) == counts for m in dm)
    out["excess"] = ok
    out["partitions"] = relate_partitions(can, principal_decomposition(p)).ok
    out["proximity"] = proximity_check(p, pts).holds
    out["matroid"] = decmin_set(p, pts).matroid_check
    continuous_sqsum_duality(p)
    out["continuous"] = convex_combination_check(p, pts).holds
    out["relaxation"] = dec_key(relax_decmin(p)) == dec_key(local)
    return out


def _hist(m) -> dict:
    h = {}
    for v in m:
        h[v] = h.get(v, 0) + 1
    return h


def random_cost(rng: random.Random):
    kind = rng.choice(["square", "wsquare", "power", "exp", "abs", "pospart",
                       "piecelin2", "intervaldist", "table", "translated"])
    if kind == "square":
        return square()
    if kind == "wsquare":
        return wsquare(rng.randint(1, 6))
    if kind == "power":
        return power(rng.randint(1, 3), rng.randint(1, 3))
    if kind == "exp":
        return exp(rng.randint(1, 3), rng.randint(2, 4))
    if kind == "abs":
        return abs_(rng.randint(-5, 5))
    if kind == "pospart":
        return pospart(rng.randint(-5, 5))
    if kind == "piecelin2":
        a = rng.randint(0, 5)
        return piecelin2(a, a + rng.randint(0, 5), rng.randint(0, 6))
    if kind == "intervaldist":
        a = rng.randint(-5, 5)
        return intervaldist(a, a + rng.randint(0, 4))
    if kind == "table":
        diffs = sorted(rng.randint(-5, 5) for _ in range(rng.randint(0, 6)))
        vals = [rng.randint(-3, 3)]
        for d in diffs:
            vals.append(vals[-1] + d)
        return table(rng.randint(-4, 4), vals)
    base = rng.choice([square(), abs_(1), pospart(0), exp(1, 2)])
    return translate(base, rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3))


def conjugate_checks(phi, L: int = 50) -> bool:
    """Closed form against brute force on ``[-L, L]``, plus biconjugacy there."""
    dom = (phi.lo, phi.hi)
    for l in range(-L, L + 1):
        if phi.conjugate_fn_eval(l) != brute_conjugate(phi, l, 200, dom):
            return False
    for k in range(-L, L + 1):
        if phi(k) == INF:
            continue
        lo, hi = subgradient_interval(phi, k)
        if hi < -L or lo > L:
            continue
        if biconjugate_on_window(phi, k, L) != phi(k):
            return False
    return True


def separable_checks(p: SetFunction, obj: SeparableObjective) -> bool:
    best, _ = brute_min(p, obj)
    if best == INF:
        return True
    x = minimize_separable(p, obj)
    return obj(x) == best and dual_certificate(p, obj, x).gap == 0


def flow_checks(rng: random.Random) -> bool:
    net = random_network(rng)
    best, _ = brute_min_flow(net)
    x = min_cost_mflow(net)
    cert = flow_certificate(net, x)
    return net.cost(x) == best and cert.gap == 0 and cert.kilter
