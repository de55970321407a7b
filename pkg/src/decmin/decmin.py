"""Dec-min elements of an M-convex set and the scalar min-max formulas."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (
    ConsistencyError,
    InfeasibleError,
    exchange,
    histogram,
    square_sum,
)
from .majorize import dec_min_class
from .mconvex import contains, enumerate_points, exchange_matrix, greedy_vertex, brute_min
from .partition import _cards, beta_one, canonical_decomposition, smallest_maximizer
from .setfn import SetFunction


@dataclass(frozen=True)
class TighteningStep:
    s: int
    t: int


@dataclass(frozen=True)
class DecMinStructure:
    elements: tuple
    delta_star: tuple
    basis_family: tuple      # subsets L with m = chi_L + delta_star
    matroid_check: bool


def _require_member(p: SetFunction, m: Sequence[int]) -> None:
    if not contains(p, m):
        raise InfeasibleError(f"{tuple(m)} is not in the M-convex set")


def _steps(p: SetFunction, m: Sequence[int]):
    """Feasible 1-tightening pairs ``(t, s)`` in index order."""
    feas = exchange_matrix(p, m)
    n = p.n
    for t in range(n):
        for s in range(n):
            if m[t] >= m[s] + 2 and feas[s][t]:
                yield t, s


def find_1tightening(p: SetFunction, m: Sequence[int]) -> Optional[TighteningStep]:
    _require_member(p, m)
    for t, s in _steps(p, m):
        return TighteningStep(s, t)
    return None


def decmin_local_search(p: SetFunction, x0: Optional[Sequence[int]] = None) -> tuple:
    """Apply steepest 1-tightening steps until none is left."""
    m = tuple(x0) if x0 is not None else greedy_vertex(p)
    _require_member(p, m)
    # every step lowers the square-sum by at least 2, and it stays >= 0
    budget = square_sum(m) // 2 + 1
    while True:
        best = None
        for t, s in _steps(p, m):
            gap = m[t] - m[s]
            if best is None or gap > best[0]:
                best = (gap, s, t)
        if best is None:
            return m
        m = exchange(m, best[1], best[2])
        budget -= 1
        if budget < 0:
            raise ConsistencyError("local search exceeded its step bound")


def beta1(p: SetFunction) -> int:
    return beta_one(p)


def max_excess_side(p: SetFunction, a: int) -> int:
    vals = p.table()
    cards = _cards(p.n)
    return max(vals[X] - a * cards[X] for X in range(p.full + 1))


def r1(p: SetFunction) -> int:
    return max_excess_side(p, beta1(p) - 1)


def min_total_excess(p: SetFunction, a: int, dm: Optional[Sequence[int]] = None):
    """``(min side, max side, witness)`` for the total ``a``-excess formula.

    The min side is evaluated at a dec-min element; the witness is the
    smallest maximizer of ``p(X) - a|X|``.
    """
    m = tuple(dm) if dm is not None else decmin_local_search(p)
    lhs = sum(max(v - a, 0) for v in m)
    rhs = max_excess_side(p, a)
    if lhs != rhs:
        raise ConsistencyError(f"a-excess mismatch at a={a}: {lhs} vs {rhs}")
    return lhs, rhs, smallest_maximizer(p, a)


def theta_counts(p: SetFunction, check: bool = True) -> dict:
    """Value histogram of dec-min elements from the excess recurrence."""
    n = p.n
    b1 = beta1(p)
    theta = []
    i = 0
    while sum(theta) < n:
        rhs = max_excess_side(p, b1 - i - 1)
        val = rhs - sum((i - j + 1) * theta[j] for j in range(i))
        if val < 0:
            raise ConsistencyError(f"negative count at value {b1 - i}")
        theta.append(val)
        i += 1
    if sum(theta) != n:
        raise ConsistencyError("value counts overshoot the ground-set size")
    counts = {b1 - j: c for j, c in enumerate(theta) if c}
    if check:
        seen = histogram(decmin_local_search(p))
        if seen != counts:
            raise ConsistencyError(f"recurrence {counts} disagrees with dec-min {seen}")
    return counts


def decmin_brute(p: SetFunction, points=None) -> list:
    pts = points if points is not None else enumerate_points(p)
    return dec_min_class(pts)


def _base_exchange_ok(bases: set) -> bool:
    for L1 in bases:
        for L2 in bases:
            diff = L1 & ~L2
            while diff:
                low = diff & -diff
                diff ^= low
                cand = L2 & ~L1
                found = False
                while cand:
                    t = cand & -cand
                    cand ^= t
                    if (L1 & ~low) | t in bases:
                        found = True
                        break
                if not found:
                    return False
    return True


def decmin_set(p: SetFunction, points=None) -> DecMinStructure:
    """All dec-min elements, written as ``chi_L + delta_star`` over a matroid's bases."""
    elems = decmin_brute(p, points)
    delta = canonical_decomposition(p).delta_star
    bases = set()
    for m in elems:
        L = 0
        for s, (v, d) in enumerate(zip(m, delta)):
            if v - d == 1:
                L |= 1 << s
            elif v - d != 0:
                raise ConsistencyError(f"dec-min {m} is not a 0/1 shift of {delta}")
        bases.add(L)
    ok = _base_exchange_ok(bases)
    if not ok:
        raise ConsistencyError("dec-min bases violate the exchange axiom")
    return DecMinStructure(tuple(elems), delta, tuple(sorted(bases)), ok)


def lexmin_convex_witness(p: SetFunction, N: Optional[int] = None, points=None) -> list:
    """Minimizers of ``sum N**x(s)`` (shifted to nonnegative exponents).

    With ``N >= |S| >= 2`` these are exactly the dec-min elements.
    """
    N = max(p.n, 2) if N is None else N
    if N < max(p.n, 2):
        raise ValueError("N must be at least max(|S|, 2)")
    pts = list(points if points is not None else enumerate_points(p))
    lo = min(min(x) for x in pts)
    _, arg = brute_min(p, lambda x: sum(N ** (v - lo) for v in x), points=pts)
    return arg
