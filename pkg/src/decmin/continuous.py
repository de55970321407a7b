"""Minimum-norm point, proximity, and rounding-based dec-min algorithms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .conjugate import intervaldist
from .core import ConsistencyError, ceil_vec, floor_vec, subset_sums
from .decmin import decmin_brute, decmin_local_search
from .duality import SeparableObjective, minimize_separable
from .majorize import dec_key
from .mconvex import enumerate_points
from .partition import canonical_decomposition, principal_decomposition
from .setfn import SetFunction, lovasz_ext


@dataclass(frozen=True)
class MinNormPoint:
    m_R: tuple
    lambdas: tuple
    blocks: tuple

    def values(self) -> dict:
        return {lam: blk for lam, blk in zip(self.lambdas, self.blocks)}


def in_base_polyhedron(p: SetFunction, x: Sequence) -> bool:
    sums = subset_sums(x)
    vals = p.table()
    return sums[p.full] == vals[p.full] and all(sums[Z] >= vals[Z] for Z in range(p.full))


def min_norm_point(p: SetFunction) -> MinNormPoint:
    pri = principal_decomposition(p)
    m = [Fraction(0)] * p.n
    for lam, blk in zip(pri.lambdas, pri.partition):
        for s in range(p.n):
            if blk >> s & 1:
                m[s] = Fraction(lam)
    m = tuple(m)
    sums = subset_sums(m)
    if any(sums[C] != p(C) for C in pri.chain):
        raise ConsistencyError("minimum-norm point is not tight on the principal chain")
    if not in_base_polyhedron(p, m):
        raise ConsistencyError("minimum-norm point lies outside the base polyhedron")
    return MinNormPoint(m, pri.lambdas, pri.partition)


def continuous_sqsum_duality(p: SetFunction) -> tuple:
    """``(|m_R|^2, p^(2 m_R) - sum m_R(s)^2)``; the two must agree."""
    m = min_norm_point(p).m_R
    primal = sum(v * v for v in m)
    pi = tuple(2 * v for v in m)
    dual = lovasz_ext(p, pi) - sum((v / 2) ** 2 for v in pi)
    if primal != dual:
        raise ConsistencyError(f"continuous duality fails: {primal} vs {dual}")
    return primal, dual


@dataclass
class ProximityReport:
    lower: tuple
    upper: tuple
    holds: bool
    violations: list
    box_not_decmin: list


def proximity_check(p: SetFunction, points=None) -> ProximityReport:
    m_R = min_norm_point(p).m_R
    lo, hi = floor_vec(m_R), ceil_vec(m_R)
    pts = points if points is not None else enumerate_points(p)
    dm = set(decmin_brute(p, pts))
    inside = lambda x: all(a <= v <= b for a, v, b in zip(lo, x, hi))
    violations = sorted(m for m in dm if not inside(m))
    extra = sorted(x for x in pts if inside(x) and x not in dm)
    return ProximityReport(lo, hi, not violations, violations, extra)


# --------------------------------------------------------------------------
# rounding + matroid greedy


def _box_feasible(p: SetFunction, lo: Sequence[int], hi: Sequence[int]) -> Optional[tuple]:
    """Some point of the set inside ``[lo, hi]``, or ``None``."""
    obj = SeparableObjective([intervaldist(a, b) for a, b in zip(lo, hi)])
    x = minimize_separable(p, obj)
    return x if obj(x) == 0 else None


def greedy_in_box(p: SetFunction, lo: Sequence[int], hi: Sequence[int],
                  weight: Sequence) -> tuple:
    """Minimum-weight point of the set inside a unit box ``[lo, hi]``.

    The box points are ``lo + chi_L`` for the bases ``L`` of a matroid; a set
    ``I`` is independent when some box point lies above ``lo + chi_I``.
    """
    lo, hi = tuple(lo), tuple(hi)
    if any(b - a not in (0, 1) for a, b in zip(lo, hi)):
        raise ValueError("greedy needs a unit box")
    if _box_feasible(p, lo, hi) is None:
        raise ConsistencyError(f"no point in the box {lo}..{hi}")
    free = sorted((s for s in range(p.n) if hi[s] > lo[s]), key=lambda s: (weight[s], s))
    cur = list(lo)
    for s in free:
        cur[s] += 1
        if _box_feasible(p, cur, hi) is None:
            cur[s] -= 1
    x = tuple(cur)
    if _box_feasible(p, x, x) is None:
        raise ConsistencyError("greedy result is not a base")
    return x


def relaxation_data(p: SetFunction) -> dict:
    m_R = min_norm_point(p).m_R
    lo, hi = floor_vec(m_R), ceil_vec(m_R)
    w = tuple(u * u - l * l for l, u in zip(lo, hi))
    return {"m_R": m_R, "lower": lo, "upper": hi, "weight": w}


def relax_decmin(p: SetFunction, check: bool = True) -> tuple:
    """Round the minimum-norm point and pick a minimum-weight base in its box."""
    d = relaxation_data(p)
    x = greedy_in_box(p, d["lower"], d["upper"], d["weight"])
    if check and dec_key(x) != dec_key(decmin_local_search(p)):
        raise ConsistencyError(f"relaxation result {x} is not dec-min")
    return x


def pwl_square(t) -> Fraction:
    """Piecewise-linear interpolation of ``k^2`` at a rational ``t``."""
    t = abs(Fraction(t))
    if t == 0:
        return Fraction(0)
    k = -((-t.numerator) // t.denominator)
    return (2 * k - 1) * t - k * (k - 1)


def pwl_minimizer(p: SetFunction, points=None) -> tuple:
    """A minimizer of the piecewise-linear square-sum over the base polyhedron.

    The integral minimizers are the dec-min elements and the extension is
    convex, so their centroid is a minimizer too; both facts are re-checked.
    """
    pts = points if points is not None else enumerate_points(p)
    dm = decmin_brute(p, pts)
    k = len(dm)
    c = tuple(Fraction(sum(col), k) for col in zip(*dm))
    best = min(sum(v * v for v in x) for x in pts)
    if sum(pwl_square(v) for v in c) != best:
        raise ConsistencyError("centroid does not attain the integral minimum")
    if not in_base_polyhedron(p, c):
        raise ConsistencyError("centroid lies outside the base polyhedron")
    return c


def relax_decmin_pwl(p: SetFunction, points=None, check: bool = True) -> tuple:
    c = pwl_minimizer(p, points)
    lo, hi = floor_vec(c), ceil_vec(c)
    w = tuple(u * u - l * l for l, u in zip(lo, hi))
    x = greedy_in_box(p, lo, hi, w)
    if check and dec_key(x) != dec_key(decmin_local_search(p)):
        raise ConsistencyError(f"relaxation result {x} is not dec-min")
    return x


# --------------------------------------------------------------------------
# convex combination


def _phase_one(A: list, b: list) -> Optional[list]:
    """Exact feasibility of ``A y = b, y >= 0`` by the simplex method (Bland's rule)."""
    rows, cols = len(A), len(A[0]) if A else 0
    T = []
    for i in range(rows):
        sign = -1 if b[i] < 0 else 1
        T.append([Fraction(sign * a) for a in A[i]]
                 + [Fraction(1 if j == i else 0) for j in range(rows)]
                 + [Fraction(sign * b[i])])
    basis = [cols + i for i in range(rows)]
    width = cols + rows
    # objective: minimize the sum of artificials -> reduced costs
    while True:
        cost = [Fraction(0)] * (width + 1)
        for j in range(cols, width):
            cost[j] = Fraction(1)
        red = cost[:]
        for i, bi in enumerate(basis):
            cb = cost[bi]
            if cb:
                for j in range(width + 1):
                    red[j] -= cb * T[i][j]
        enter = next((j for j in range(width) if red[j] < 0 and j not in basis), None)
        if enter is None:
            break
        ratios = [(T[i][-1] / T[i][enter], basis[i], i) for i in range(rows) if T[i][enter] > 0]
        if not ratios:
            break
        _, _, r = min(ratios)
        piv = T[r][enter]
        T[r] = [v / piv for v in T[r]]
        for i in range(rows):
            if i != r and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[r])]
        basis[r] = enter
    y = [Fraction(0)] * width
    for i, bi in enumerate(basis):
        y[bi] = T[i][-1]
    if any(y[j] != 0 for j in range(cols, width)):
        return None
    return y[:cols]


@dataclass
class CombinationReport:
    chain_tight: bool
    in_box: bool
    weights: Optional[dict]

    @property
    def holds(self) -> bool:
        return self.chain_tight and self.in_box and (self.weights is None or bool(self.weights))


def convex_combination_check(p: SetFunction, points=None, limit: int = 200) -> CombinationReport:
    m_R = min_norm_point(p).m_R
    can = canonical_decomposition(p)
    sums = subset_sums(m_R)
    tight = all(sums[C] == p(C) for C in can.chain)
    box = all(beta - 1 <= m_R[s] <= beta
              for beta, S in zip(can.betas, can.partition)
              for s in range(p.n) if S >> s & 1)
    weights = None
    pts = points if points is not None else enumerate_points(p)
    dm = decmin_brute(p, pts)
    if len(dm) <= limit:
        A = [[m[s] for m in dm] for s in range(p.n)] + [[1] * len(dm)]
        b = list(m_R) + [1]
        y = _phase_one(A, b)
        if y is None:
            weights = {}
        else:
            weights = {m: w for m, w in zip(dm, y) if w}
            total = tuple(sum(w * m[s] for m, w in weights.items()) for s in range(p.n))
            if total != m_R or sum(weights.values()) != 1:
                raise ConsistencyError("simplex returned an invalid combination")
    return CombinationReport(tight, box, weights)
