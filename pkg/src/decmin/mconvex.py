"""Membership, greedy vertices, exchanges and enumeration on an M-convex set."""

from __future__ import annotations

from collections import deque
from typing import Callable, Optional, Sequence

from .core import EnumerationError, exchange, subset_sums
from .setfn import SetFunction, lovasz_ext

DEFAULT_ENUM_CAP = 10 ** 6


def contains(p: SetFunction, x: Sequence[int]) -> bool:
    if len(x) != p.n:
        raise ValueError("vector length differs from the ground set")
    sums = subset_sums(x)
    if sums[p.full] != p.total:
        return False
    vals = p.table()
    return all(sums[Z] >= vals[Z] for Z in range(1, p.full))


def tight_sets(p: SetFunction, x: Sequence[int]) -> list:
    """Masks ``Z`` with ``x~(Z) = p(Z)`` (including the empty and full sets)."""
    sums = subset_sums(x)
    vals = p.table()
    return [Z for Z in range(p.full + 1) if sums[Z] == vals[Z]]


def greedy_vertex(p: SetFunction, pi: Optional[Sequence] = None) -> tuple:
    """Vertex minimizing ``pi x``, built along the ``pi``-decreasing order."""
    n = p.n
    pi = pi if pi is not None else (0,) * n
    order = sorted(range(n), key=lambda i: (-pi[i], i))
    m = [0] * n
    I, prev = 0, 0
    for i in order:
        I |= 1 << i
        cur = p(I)
        m[i] = cur - prev
        prev = cur
    return tuple(m)


def exchange_feasible(p: SetFunction, m: Sequence[int], s: int, t: int) -> bool:
    """Whether ``m + chi_s - chi_t`` stays in the set (``s != t``)."""
    if s == t:
        return False
    return contains(p, exchange(m, s, t))


def exchange_matrix(p: SetFunction, m: Sequence[int]) -> list:
    """``feas[s][t]`` for all pairs, from the tight sets of ``m``.

    ``m + chi_s - chi_t`` is feasible iff no tight set contains ``t`` but
    not ``s``. Computed in one pass over the subsets.
    """
    n = p.n
    blocked = [[False] * n for _ in range(n)]
    for Z in tight_sets(p, m):
        if Z == 0 or Z == p.full:
            continue
        inside = [i for i in range(n) if Z >> i & 1]
        outside = [i for i in range(n) if not Z >> i & 1]
        for t in inside:
            for s in outside:
                blocked[s][t] = True
    return [[s != t and not blocked[s][t] for t in range(n)] for s in range(n)]


class MConvexSet:
    """An M-convex set with a cached enumeration."""

    def __init__(self, p: SetFunction, cap: Optional[int] = None):
        self.p = p
        self.cap = cap
        self._points: Optional[frozenset] = None

    def points(self) -> frozenset:
        if self._points is None:
            self._points = frozenset(enumerate_points(self.p, cap=self.cap))
        return self._points

    def __contains__(self, x) -> bool:
        return contains(self.p, x)

    def __len__(self) -> int:
        return len(self.points())


def set_enum_cap(cap: int) -> None:
    global DEFAULT_ENUM_CAP
    DEFAULT_ENUM_CAP = int(cap)


def enumerate_points(p: SetFunction, cap: Optional[int] = None) -> set:
    """All integral points, by breadth-first search over single exchanges."""
    cap = DEFAULT_ENUM_CAP if cap is None else cap
    n = p.n
    start = greedy_vertex(p)
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        feas = exchange_matrix(p, m)
        for s in range(n):
            for t in range(n):
                if feas[s][t]:
                    y = exchange(m, s, t)
                    if y not in seen:
                        seen.add(y)
                        if len(seen) > cap:
                            raise EnumerationError(
                                f"more than {cap} points; raise the cap or shrink the instance")
                        queue.append(y)
    return seen


def sorted_points(p: SetFunction, cap: Optional[int] = None) -> list:
    return sorted(enumerate_points(p, cap=cap))


def brute_min(p: SetFunction, objective: Callable, cap: Optional[int] = None,
              points=None):
    """Exact minimum of ``objective`` over all points, with every minimizer."""
    pts = sorted(points if points is not None else enumerate_points(p, cap=cap))
    best, arg = None, []
    for x in pts:
        v = objective(x)
        if best is None or v < best:
            best, arg = v, [x]
        elif v == best:
            arg.append(x)
    return best, arg


def min_linear(p: SetFunction, pi: Sequence) -> int:
    return lovasz_ext(p, pi)


def exchange_graph_connected(p: SetFunction, points) -> bool:
    pts = set(points)
    if not pts:
        return True
    start = min(pts)
    seen = {start}
    stack = [start]
    n = p.n
    while stack:
        m = stack.pop()
        for s in range(n):
            for t in range(n):
                if s != t:
                    y = exchange(m, s, t)
                    if y in pts and y not in seen:
                        seen.add(y)
                        stack.append(y)
    return seen == pts
