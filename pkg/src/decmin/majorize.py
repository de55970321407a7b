"""Decreasing/increasing orders and majorization of integer vectors."""

from __future__ import annotations

from itertools import accumulate
from typing import Iterable, Optional, Sequence

from .core import sort_asc, sort_desc

SMALLER = "smaller"
EQUAL = "equal"
GREATER = "greater"
INCOMPARABLE = "incomparable"


def _same_length(x, y):
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")


def _lex(a: list, b: list) -> str:
    if a < b:
        return SMALLER
    if a > b:
        return GREATER
    return EQUAL


def dec_compare(x: Sequence, y: Sequence) -> str:
    """Verdict for ``x`` against ``y`` in the decreasing order (smaller is better)."""
    _same_length(x, y)
    return _lex(sort_desc(x), sort_desc(y))


def inc_compare(x: Sequence, y: Sequence) -> str:
    """Verdict for ``x`` against ``y`` by lexicographic comparison of ``x`` ascending."""
    _same_length(x, y)
    return _lex(sort_asc(x), sort_asc(y))


def dec_key(x: Sequence) -> tuple:
    return tuple(sort_desc(x))


def inc_key(x: Sequence) -> tuple:
    return tuple(sort_asc(x))


def prefix_sums_desc(x: Sequence) -> list:
    return list(accumulate(sort_desc(x)))


def majorizes(y: Sequence, x: Sequence) -> bool:
    """Whether ``x`` is majorized by ``y``."""
    _same_length(x, y)
    if sum(x) != sum(y):
        return False
    return weakly_submajorizes(y, x)


def weakly_submajorizes(y: Sequence, x: Sequence) -> bool:
    """Prefix sums of ``x`` sorted decreasingly are dominated by those of ``y``."""
    _same_length(x, y)
    return all(a <= b for a, b in zip(prefix_sums_desc(x), prefix_sums_desc(y)))


def excess(x: Sequence, a: int):
    return sum(max(v - a, 0) for v in x)


def excess_profile_leq(x: Sequence, y: Sequence) -> bool:
    """Equal totals and ``sum (x-a)+ <= sum (y-a)+`` for every integer ``a``.

    Only thresholds between the extreme components matter: beyond them both
    sides are zero or linear in ``a`` with equal slope.
    """
    _same_length(x, y)
    if sum(x) != sum(y):
        return False
    if not x:
        return True
    lo, hi = min(min(x), min(y)), max(max(x), max(y))
    return all(excess(x, a) <= excess(y, a) for a in range(lo, hi + 1))


def t_transform(x: Sequence, s: int, t: int, lam: int) -> tuple:
    """Move ``lam`` units from ``t`` to ``s``; requires ``0 <= lam <= x[t] - x[s]``."""
    if not 0 <= lam <= x[t] - x[s]:
        raise ValueError(f"transfer {lam} outside [0, {x[t] - x[s]}]")
    y = list(x)
    y[s] += lam
    y[t] -= lam
    return tuple(y)


def least_majorized(D: Iterable[Sequence]) -> Optional[tuple]:
    """An element majorized by every member of ``D``, or ``None``."""
    found = least_majorized_class(D)
    return found[0] if found else None


def least_majorized_class(D: Iterable[Sequence]) -> list:
    """Members majorized by all of ``D``, in sorted order.

    Such ``x`` has the componentwise smallest prefix sums, so one pass
    suffices instead of comparing every pair.
    """
    pts = sorted({tuple(x) for x in D})
    if not pts:
        raise ValueError("D must be nonempty")
    if len({sum(x) for x in pts}) > 1:
        return []
    pre = {x: prefix_sums_desc(x) for x in pts}
    low = [min(col) for col in zip(*pre.values())]
    return [x for x in pts if pre[x] == low]


def dec_min_class(D: Iterable[Sequence]) -> list:
    pts = sorted({tuple(x) for x in D})
    best = min(dec_key(x) for x in pts)
    return [x for x in pts if dec_key(x) == best]


def inc_max_class(D: Iterable[Sequence]) -> list:
    pts = sorted({tuple(x) for x in D})
    best = max(inc_key(x) for x in pts)
    return [x for x in pts if inc_key(x) == best]
