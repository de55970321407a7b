"""Univariate discrete convex functions and their integer conjugates.

``psi(l) = max_k { k*l - phi(k) }``. Values are Python ints; ``INF`` stands
for ``+inf`` outside effective domains.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Callable, Optional

INF = math.inf

KINDS = ("square", "wsquare", "power", "exp", "abs", "pospart", "piecelin2",
         "intervaldist", "table", "translated", "conjugate")


class OutOfDomain(ValueError):
    pass


def _iroot_floor(x: int, r: int) -> int:
    """Largest integer ``K >= 0`` with ``K**r <= x`` (``x >= 0``)."""
    if x <= 0:
        return 0
    K = int(round(x ** (1.0 / r)))
    while K ** r > x:
        K -= 1
    while (K + 1) ** r <= x:
        K += 1
    return K


@dataclass(frozen=True)
class DiscreteConvexFn:
    """Integer-valued discrete convex function on an integer interval.

    ``lo``/``hi`` bound the effective domain (``None`` means unbounded).
    """

    kind: str
    params: dict = field(default_factory=dict, hash=False)
    lo: Optional[int] = None
    hi: Optional[int] = None

    # --- evaluation -------------------------------------------------------

    def in_domain(self, k: int) -> bool:
        return (self.lo is None or k >= self.lo) and (self.hi is None or k <= self.hi)

    def __call__(self, k: int):
        if not self.in_domain(k):
            return INF
        P = self.params
        kind = self.kind
        if kind == "square":
            return k * k
        if kind == "wsquare":
            return P["a"] * k * k
        if kind == "power":
            return P["a"] * k ** (2 * P["b"])
        if kind == "exp":
            return P["a"] * P["b"] ** k
        if kind == "abs":
            return abs(k - P["a"])
        if kind == "pospart":
            return max(k - P["a"], 0)
        if kind == "piecelin2":
            return P["lam"] * max(k - P["a"], 0)
        if kind == "intervaldist":
            return max(P["a"] - k, 0, k - P["b"])
        if kind == "table":
            return P["values"][k - self.lo]
        if kind == "translated":
            base = P["base"]
            v = base(k - P["a"])
            return INF if v == INF else v + P["b"] * k + P["c"]
        if kind == "conjugate":
            return P["base"].conjugate(k)
        raise ValueError(f"unknown kind {kind!r}")

    # --- conjugate ----------------------------------------------------------

    def conjugate(self, l: int):
        """Closed-form ``psi(l)``."""
        P = self.params
        kind = self.kind
        if kind == "square":
            return (l // 2) * -(-l // 2)
        if kind == "wsquare":
            a = P["a"]
            k = (l + a) // (2 * a)
            return k * (l - a * k)
        if kind == "power":
            a, b = P["a"], P["b"]
            L = abs(l)
            K = _iroot_floor(L // (2 * a * b), 2 * b - 1)
            return max(L * c - a * c ** (2 * b) for c in (K, K + 1))
        if kind == "exp":
            a, b = P["a"], P["b"]
            k, step = 0, a * (b - 1)
            while step < l:
                k += 1
                step *= b
            return k * l - a * b ** k
        if kind == "abs":
            return P["a"] * l if -1 <= l <= 1 else INF
        if kind == "pospart":
            return {0: 0, 1: P["a"]}.get(l, INF)
        if kind == "piecelin2":
            a, b, lam = P["a"], P["b"], P["lam"]
            if l <= 0:
                return 0
            if l <= lam:
                return a * l
            return b * l - (b - a) * lam
        if kind == "intervaldist":
            return {-1: -P["a"], 0: 0, 1: P["b"]}.get(l, INF)
        if kind == "table":
            vals, lo = P["values"], self.lo
            diffs = P["diffs"]
            # maximizer: first k whose forward difference reaches l
            i = bisect_left(diffs, l)
            return (lo + i) * l - vals[i]
        if kind == "translated":
            base, a, b, c = P["base"], P["a"], P["b"], P["c"]
            v = base.conjugate(l - b)
            return INF if v == INF else v + a * (l - b) - c
        if kind == "conjugate":
            return brute_conjugate(P["base"].conjugate_fn_eval, l, P.get("window", 200),
                                   P["base"].conjugate_domain())
        raise ValueError(f"unknown kind {kind!r}")

    def conjugate_domain(self) -> tuple:
        """Effective domain of ``psi`` as ``(lo, hi)``; ``None`` is unbounded."""
        kind = self.kind
        if kind in ("abs", "intervaldist"):
            return (-1, 1)
        if kind == "pospart":
            return (0, 1)
        if kind == "translated":
            lo, hi = self.params["base"].conjugate_domain()
            b = self.params["b"]
            return (None if lo is None else lo + b, None if hi is None else hi + b)
        if kind == "conjugate":
            return (self.params["base"].lo, self.params["base"].hi)
        return (None, None)

    def conjugate_fn_eval(self, l: int):
        lo, hi = self.conjugate_domain()
        if (lo is not None and l < lo) or (hi is not None and l > hi):
            return INF
        return self.conjugate(l)

    def conjugate_fn(self) -> "DiscreteConvexFn":
        lo, hi = self.conjugate_domain()
        return DiscreteConvexFn("conjugate", {"base": self}, lo, hi)

    def to_descriptor(self) -> dict:
        P = self.params
        if self.kind == "square":
            return {"kind": "square"}
        if self.kind in ("wsquare", "abs", "pospart"):
            return {"kind": self.kind, "a": P["a"]}
        if self.kind in ("power", "exp", "intervaldist"):
            return {"kind": self.kind, "a": P["a"], "b": P["b"]}
        if self.kind == "piecelin2":
            return {"kind": "piecelin2", "a": P["a"], "b": P["b"], "lam": P["lam"]}
        if self.kind == "table":
            return {"kind": "table", "lo": self.lo, "values": list(P["values"])}
        if self.kind == "translated":
            return {"kind": "translated", "base": P["base"].to_descriptor(),
                    "a": P["a"], "b": P["b"], "c": P["c"]}
        raise ValueError(f"{self.kind!r} has no descriptor")


# --- constructors ------------------------------------------------------------


def square() -> DiscreteConvexFn:
    return DiscreteConvexFn("square")


def wsquare(a: int) -> DiscreteConvexFn:
    if a < 1:
        raise ValueError("weighted square needs a >= 1")
    return DiscreteConvexFn("wsquare", {"a": a})


def power(a: int, b: int) -> DiscreteConvexFn:
    if a < 1 or b < 1:
        raise ValueError("power needs a >= 1 and b >= 1")
    return DiscreteConvexFn("power", {"a": a, "b": b})


def exp(a: int, b: int) -> DiscreteConvexFn:
    if a < 1 or b < 2:
        raise ValueError("exponential needs a >= 1 and b >= 2")
    return DiscreteConvexFn("exp", {"a": a, "b": b}, lo=0)


def abs_(a: int = 0) -> DiscreteConvexFn:
    return DiscreteConvexFn("abs", {"a": a})


def pospart(a: int = 0) -> DiscreteConvexFn:
    return DiscreteConvexFn("pospart", {"a": a})


def piecelin2(a: int, b: int, lam: int) -> DiscreteConvexFn:
    if not 0 <= a <= b or lam < 0:
        raise ValueError("piecelin2 needs 0 <= a <= b and lam >= 0")
    return DiscreteConvexFn("piecelin2", {"a": a, "b": b, "lam": lam}, lo=0, hi=b)


def intervaldist(a: int, b: int) -> DiscreteConvexFn:
    if a > b:
        raise ValueError("intervaldist needs a <= b")
    return DiscreteConvexFn("intervaldist", {"a": a, "b": b})


def table(lo: int, values) -> DiscreteConvexFn:
    values = tuple(int(v) for v in values)
    if not values:
        raise ValueError("table needs at least one value")
    diffs = tuple(values[i + 1] - values[i] for i in range(len(values) - 1))
    if any(diffs[i] > diffs[i + 1] for i in range(len(diffs) - 1)):
        raise ValueError("table values are not discrete convex")
    return DiscreteConvexFn("table", {"values": values, "diffs": diffs},
                            lo=lo, hi=lo + len(values) - 1)


def translate(phi: DiscreteConvexFn, a: int = 0, b: int = 0, c: int = 0) -> DiscreteConvexFn:
    """``k -> phi(k - a) + b*k + c``."""
    if a == 0 and b == 0 and c == 0:
        return phi
    lo = None if phi.lo is None else phi.lo + a
    hi = None if phi.hi is None else phi.hi + a
    return DiscreteConvexFn("translated", {"base": phi, "a": a, "b": b, "c": c}, lo, hi)


def from_descriptor(d: dict) -> DiscreteConvexFn:
    kind = d.get("kind")
    if kind == "square":
        return square()
    if kind == "wsquare":
        return wsquare(int(d["a"]))
    if kind == "power":
        return power(int(d["a"]), int(d["b"]))
    if kind == "exp":
        return exp(int(d["a"]), int(d["b"]))
    if kind == "abs":
        return abs_(int(d.get("a", 0)))
    if kind == "pospart":
        return pospart(int(d.get("a", 0)))
    if kind == "piecelin2":
        return piecelin2(int(d["a"]), int(d["b"]), int(d["lam"]))
    if kind == "intervaldist":
        return intervaldist(int(d["a"]), int(d["b"]))
    if kind == "table":
        return table(int(d["lo"]), d["values"])
    if kind == "translated":
        return translate(from_descriptor(d["base"]), int(d.get("a", 0)),
                         int(d.get("b", 0)), int(d.get("c", 0)))
    raise ValueError(f"unknown cost kind {kind!r}")


# --- generic operations --------------------------------------------------------


def conjugate(phi: DiscreteConvexFn) -> DiscreteConvexFn:
    """The conjugate as a function object (closed form where available)."""
    return phi.conjugate_fn()


def brute_conjugate(f: Callable, l: int, window: int = 200, domain=(None, None)):
    """``max_k k*l - f(k)`` by scanning ``k`` in ``[-window, window]``.

    If doubling the window still improves the value the supremum is taken to
    be unbounded (linear growth along a ray).
    """
    lo, hi = domain

    def scan(W):
        a = -W if lo is None else max(lo, -W)
        b = W if hi is None else min(hi, W)
        best = -INF
        for k in range(a, b + 1):
            v = f(k)
            if v != INF:
                best = max(best, k * l - v)
        return best

    v1 = scan(window)
    if lo is not None and hi is not None and -window <= lo and hi <= window:
        return v1
    v2 = scan(2 * window)
    return INF if v2 > v1 else v1


def biconjugate_on_window(phi: DiscreteConvexFn, k: int, L: int = 50):
    """``max_{|l| <= L} k*l - psi(l)``.

    This equals ``phi(k)`` whenever the subgradient interval of ``phi`` at
    ``k`` meets ``[-L, L]``.
    """
    best = -INF
    for l in range(-L, L + 1):
        w = phi.conjugate_fn_eval(l)
        if w != INF:
            best = max(best, k * l - w)
    return best


def subgradient_interval(phi: DiscreteConvexFn, k: int) -> tuple:
    """``[phi(k) - phi(k-1), phi(k+1) - phi(k)]`` with infinite ends at the boundary."""
    v = phi(k)
    if v == INF:
        raise OutOfDomain(f"{k} is outside the domain")
    left, right = phi(k - 1), phi(k + 1)
    return (-INF if left == INF else v - left, INF if right == INF else right - v)


def fenchel_young_slack(phi: DiscreteConvexFn, k: int, l: int) -> int:
    v, w = phi(k), phi.conjugate(l)
    if v == INF:
        raise OutOfDomain(f"k={k} is outside the domain")
    if w == INF:
        raise OutOfDomain(f"l={l} is outside the conjugate domain")
    return v + w - k * l


def is_discrete_convex(f: Callable, lo: int, hi: int) -> bool:
    vals = [f(k) for k in range(lo, hi + 1)]
    finite = [i for i, v in enumerate(vals) if v != INF]
    if not finite:
        return True
    a, b = finite[0], finite[-1]
    if any(vals[i] == INF for i in range(a, b + 1)):
        return False
    return all(vals[i - 1] + vals[i + 1] >= 2 * vals[i] for i in range(a + 1, b))
