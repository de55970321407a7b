"""Brute-force reference implementations used only by the tests.

Nothing here calls the library's algorithms; only oracle values ``p(X)``
are read through ``p.table()``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product


def pc(X: int) -> int:
    return bin(X).count("1")


def is_supermodular(vals, n) -> bool:
    return all(vals[X] + vals[Y] <= vals[X & Y] + vals[X | Y]
               for X in range(1 << n) for Y in range(1 << n))


def points(vals, n) -> set:
    """Integral points of the base polyhedron by coordinate-wise search.

    With ``x(s1), ..., x(s(k-1))`` fixed, every subset ``Z`` of the first ``k``
    elements containing ``sk`` must satisfy ``p(Z) <= x~(Z) <= p(S) - p(S - Z)``;
    this gives an interval for ``x(sk)``. Subset sums of the prefix are carried
    along, so each level costs ``2^k`` steps.
    """
    full = (1 << n) - 1
    total = vals[full]
    out = set()

    def rec(k, x, sums):
        if k == n:
            if sums[-1] == total:
                out.add(tuple(x))
            return
        bit = 1 << k
        lo = max(vals[bit | Z] - sums[Z] for Z in range(bit))
        hi = min(total - vals[full & ~(bit | Z)] - sums[Z] for Z in range(bit))
        for v in range(lo, hi + 1):
            x.append(v)
            rec(k + 1, x, sums + [s + v for s in sums])
            x.pop()

    rec(0, [], [0])
    return out


def in_base(vals, n, x) -> bool:
    full = (1 << n) - 1
    sums = [sum(x[i] for i in range(n) if Z >> i & 1) for Z in range(full + 1)]
    return sums[full] == vals[full] and all(sums[Z] >= vals[Z] for Z in range(full + 1))


def dec_min(pts) -> set:
    best = min(sorted(x, reverse=True) for x in pts)
    return {x for x in pts if sorted(x, reverse=True) == best}


def inc_max(pts) -> set:
    best = max(sorted(x) for x in pts)
    return {x for x in pts if sorted(x) == best}


def majorized(x, y) -> bool:
    """``x`` majorized by ``y``: every symmetric convex sum is no larger.

    Checked through sums of ``(v - a)^+`` over all thresholds plus equal totals,
    computed directly rather than through sorted prefix sums.
    """
    if sum(x) != sum(y):
        return False
    lo, hi = min(min(x), min(y)) - 1, max(max(x), max(y)) + 1
    return all(sum(max(v - a, 0) for v in x) <= sum(max(v - a, 0) for v in y)
               for a in range(lo, hi + 1))


def majorized_by_prefix(x, y) -> bool:
    if sum(x) != sum(y):
        return False
    xs, ys = sorted(x, reverse=True), sorted(y, reverse=True)
    return all(sum(xs[:k]) <= sum(ys[:k]) for k in range(1, len(x) + 1))


def least_majorized(pts) -> set:
    """Members majorized by every member.

    ``x`` is majorized by all ``y`` exactly when its sorted prefix sums equal
    the componentwise minimum of all sorted prefix sums (totals are equal on
    a base polyhedron).
    """
    pre = {}
    for x in pts:
        xs = sorted(x, reverse=True)
        pre[x] = [sum(xs[:k]) for k in range(1, len(x) + 1)]
    low = [min(col) for col in zip(*pre.values())]
    return {x for x, v in pre.items() if v == low}


def one_tightening_exists(pts, m) -> bool:
    n = len(m)
    for s in range(n):
        for t in range(n):
            if s != t and m[t] >= m[s] + 2:
                y = list(m)
                y[s] += 1
                y[t] -= 1
                if tuple(y) in pts:
                    return True
    return False


def lovasz_by_min(pts, pi):
    return min(sum(a * b for a, b in zip(x, pi)) for x in pts)


def lovasz_by_permutation(vals, n, pi):
    """Min over all orderings consistent with ``pi`` (ties in every order)."""
    best = None
    for order in permutations(range(n)):
        if any(pi[order[j]] < pi[order[j + 1]] for j in range(n - 1)):
            continue
        total, I = 0, 0
        for j, i in enumerate(order):
            I |= 1 << i
            nxt = pi[order[j + 1]] if j + 1 < n else 0
            total += vals[I] * (pi[i] - nxt)
        best = total if best is None else best
        assert best == total
    return best


def ceil_div(a, b):
    return -(-a // b)


def beta1(vals, n):
    return max(ceil_div(vals[X], pc(X)) for X in range(1, 1 << n))


def excess_rhs(vals, n, a):
    return max(vals[X] - a * pc(X) for X in range(1 << n))


def min_excess(pts, a):
    return min(sum(max(v - a, 0) for v in x) for x in pts)


def maximizers(vals, n, lam):
    lam = Fraction(lam)
    sc = [vals[X] - lam * pc(X) for X in range(1 << n)]
    top = max(sc)
    return [X for X in range(1 << n) if sc[X] == top]


def L(vals, n, lam):
    """Smallest maximizer: the intersection of all maximizers."""
    ms = maximizers(vals, n, lam)
    out = (1 << n) - 1
    for X in ms:
        out &= X
    assert out in ms
    return out


def L_max(vals, n, lam):
    ms = maximizers(vals, n, lam)
    out = 0
    for X in ms:
        out |= X
    assert out in ms
    return out


def min_norm_rational(vals, n, pts=None):
    """Minimum-norm point from a scan over every candidate ratio.

    Candidate values are all ``(p(X) - p(Y)) / (|X| - |Y|)`` for ``Y`` inside
    ``X``; scanning them downward, ``m_R(s)`` is the first value at which ``s``
    belongs to the largest maximizer of ``p(X) - lam |X|``.
    """
    cands = sorted({Fraction(vals[X] - vals[Y], pc(X) - pc(Y))
                    for X in range(1 << n) for Y in range(1 << n)
                    if Y & X == Y and X != Y}, reverse=True)
    m = [None] * n
    for lam in cands:
        big = L_max(vals, n, lam)
        for s in range(n):
            if big >> s & 1 and m[s] is None:
                m[s] = lam
    return tuple(m)


def sq_conj(l):
    return (l // 2) * ceil_div(l, 2)


def sq_dual(vals, n, pi):
    return lovasz_by_permutation(vals, n, pi) - sum(sq_conj(v) for v in pi)


def conj_scan(f, l, ks):
    best = None
    for k in ks:
        v = f(k)
        if v is None:
            continue
        c = k * l - v
        best = c if best is None else max(best, c)
    return best


def all_flows(arcs, nodes, demand):
    """Every integer flow with ``lo <= x <= hi`` meeting the demands.

    ``arcs`` are ``(tail, head, lo, hi)`` with finite bounds.
    """
    idx = {v: i for i, v in enumerate(nodes)}
    out = []
    for x in product(*(range(lo, hi + 1) for _, _, lo, hi in arcs)):
        ex = [0] * len(nodes)
        for (u, v, _, _), val in zip(arcs, x):
            ex[idx[v]] += val
            ex[idx[u]] -= val
        if ex == list(demand):
            out.append(x)
    return out
