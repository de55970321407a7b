"""Integer-valued set-function oracles.

A :class:`SetFunction` is either supermodular (``p``, describing the
base-polyhedron ``{x : x~(S) = p(S), x~(Z) >= p(Z)}``) or submodular (``b``).
Values are cached in a flat table indexed by bitmask the first time a full
scan is requested.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .core import (
    DecminError,
    GroundSet,
    bits,
    check_enumerable,
    popcount,
    subset_sums,
)

EAGER_VALIDATION_MAX_N = 13
SPOT_CHECK_SAMPLES = 20000


class NotSupermodular(DecminError):
    pass


class InvalidMatroid(DecminError):
    pass


# --------------------------------------------------------------------------
# matroids


@dataclass(frozen=True)
class MatroidOracle:
    """Rank oracle of a uniform, partition or graphic matroid.

    ``params`` depends on ``kind``:

    * ``uniform``: ``{"k": rank}``
    * ``partition``: ``{"blocks": [mask, ...], "caps": [int, ...]}``
    * ``graphic``: ``{"edges": [(u, v), ...]}`` with one edge per element
    """

    kind: str
    n: int
    params: dict = field(hash=False)

    def rank(self, X: int) -> int:
        if self.kind == "uniform":
            return min(popcount(X), self.params["k"])
        if self.kind == "partition":
            return sum(min(popcount(X & blk), cap)
                       for blk, cap in zip(self.params["blocks"], self.params["caps"]))
        if self.kind == "graphic":
            parent: dict = {}

            def find(a):
                while parent.get(a, a) != a:
                    parent[a] = parent.get(parent[a], parent[a])
                    a = parent[a]
                return a

            r = 0
            for i in bits(X):
                u, v = self.params["edges"][i]
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
                    r += 1
            return r
        raise ValueError(f"unknown matroid kind {self.kind!r}")

    def validate(self, max_n: int = 12) -> None:
        """Check the rank axioms locally; skipped above ``max_n`` elements."""
        if self.n > max_n:
            return
        full = (1 << self.n) - 1
        r = [self.rank(X) for X in range(full + 1)]
        if r[0] != 0:
            raise InvalidMatroid("rank of the empty set must be 0")
        for X in range(full + 1):
            for s in range(self.n):
                if X >> s & 1:
                    continue
                step = r[X | 1 << s] - r[X]
                if step not in (0, 1):
                    raise InvalidMatroid(f"rank jumps by {step} when adding element {s}")
                for t in range(s + 1, self.n):
                    if X >> t & 1:
                        continue
                    if r[X | 1 << s] + r[X | 1 << t] < r[X] + r[X | 1 << s | 1 << t]:
                        raise InvalidMatroid("rank function is not submodular")

    @classmethod
    def uniform(cls, n: int, k: int) -> "MatroidOracle":
        if not 0 <= k <= n:
            raise InvalidMatroid("uniform rank must lie in [0, n]")
        return cls("uniform", n, {"k": k})

    @classmethod
    def partition(cls, n: int, blocks: Sequence[int], caps: Sequence[int]) -> "MatroidOracle":
        blocks = [int(b) for b in blocks]
        union = 0
        for b in blocks:
            if union & b:
                raise InvalidMatroid("partition blocks overlap")
            union |= b
        if union != (1 << n) - 1:
            raise InvalidMatroid("partition blocks must cover the ground set")
        if len(caps) != len(blocks) or any(c < 0 for c in caps):
            raise InvalidMatroid("need one nonnegative cap per block")
        return cls("partition", n, {"blocks": blocks, "caps": [int(c) for c in caps]})

    @classmethod
    def graphic(cls, edges: Sequence) -> "MatroidOracle":
        return cls("graphic", len(edges), {"edges": [tuple(e) for e in edges]})


# --------------------------------------------------------------------------
# set functions


class SetFunction:
    """Oracle for an integer-valued set function on a :class:`GroundSet`.

    ``sense`` is ``"super"`` for a supermodular ``p`` and ``"sub"`` for a
    submodular ``b``. Instances are treated as immutable; the value table
    and enumeration caches are filled lazily.
    """

    def __init__(self, ground: GroundSet, evaluate: Callable[[int], int], *,
                 kind: str, params: Optional[dict] = None, sense: str = "super"):
        self.ground = ground
        self._evaluate = evaluate
        self.kind = kind
        self.params = params or {}
        self.sense = sense
        self._table: Optional[list] = None
        self._cache: dict = {}
        if evaluate(0) != 0:
            raise ValueError("set function must vanish on the empty set")

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def full(self) -> int:
        return self.ground.full

    def __call__(self, X: int) -> int:
        if self._table is not None:
            return self._table[X]
        return self._evaluate(X)

    def table(self) -> list:
        if self._table is None:
            check_enumerable(self.n)
            self._table = [int(self._evaluate(X)) for X in range(1 << self.n)]
        return self._table

    @property
    def total(self) -> int:
        return self(self.full)

    def __repr__(self):
        return f"SetFunction(kind={self.kind!r}, sense={self.sense!r}, n={self.n})"


SupermodularFn = SetFunction
SubmodularFn = SetFunction


def eval_p(p: SetFunction, X: int) -> int:
    return p(X)


def validate_supermodular(p: SetFunction, *, sample: Optional[int] = None,
                          seed: int = 0) -> list:
    """Return violating pairs ``(X, Y, slack)`` with ``slack > 0``.

    Uses the local form ``p(X+s) + p(X+t) <= p(X) + p(X+s+t)``, which is
    equivalent to full supermodularity. With ``sample`` set, only that many
    random local quadruples are examined.
    """
    n = p.n
    vals = p.table()
    out = []

    def check(X, s, t):
        A, B = X | 1 << s, X | 1 << t
        slack = vals[A] + vals[B] - vals[X] - vals[A | B]
        if slack > 0:
            out.append((A, B, slack))

    if sample is None:
        for X in range(1 << n):
            free = [i for i in range(n) if not X >> i & 1]
            for a, s in enumerate(free):
                for t in free[a + 1:]:
                    check(X, s, t)
    elif n >= 2:
        rng = random.Random(seed)
        for _ in range(sample):
            s, t = rng.sample(range(n), 2)
            X = rng.getrandbits(n) & ~(1 << s | 1 << t)
            check(X, s, t)
    return out


def _validate_submodular(b: SetFunction) -> list:
    neg = SetFunction(b.ground, lambda X: -b(X), kind="negated")
    return validate_supermodular(neg)


def _checked(p: SetFunction) -> SetFunction:
    if p.n <= EAGER_VALIDATION_MAX_N:
        bad = validate_supermodular(p)
    else:
        bad = validate_supermodular(p, sample=SPOT_CHECK_SAMPLES)
    if bad:
        X, Y, slack = bad[0]
        g = p.ground
        raise NotSupermodular(
            f"p({{{g.key(X)}}}) + p({{{g.key(Y)}}}) exceeds "
            f"p(cap) + p(cup) by {slack}")
    return p


def from_table(ground: GroundSet, values, *, validate: bool = True) -> SetFunction:
    """Build ``p`` from a list indexed by mask or a dict keyed by subset keys.

    Dict keys are comma-joined labels (``""`` for the empty set); missing keys
    are an error.
    """
    n = ground.n
    check_enumerable(n)
    if isinstance(values, dict):
        table = [None] * (1 << n)
        for k, v in values.items():
            table[ground.from_key(k) if isinstance(k, str) else int(k)] = int(v)
        if table[0] is None:
            table[0] = 0
        missing = [ground.key(X) for X, v in enumerate(table) if v is None]
        if missing:
            raise ValueError(f"table is missing subsets: {missing[:5]}")
    else:
        table = [int(v) for v in values]
        if len(table) != 1 << n:
            raise ValueError(f"table needs {1 << n} entries, got {len(table)}")
    if table[0] != 0:
        raise ValueError("p(empty set) must be 0")
    p = SetFunction(ground, table.__getitem__, kind="table", params={"values": table})
    p._table = table
    return _checked(p) if validate else p


def _is_convex_seq(g: Sequence[int]) -> bool:
    return all(g[k - 1] + g[k + 1] >= 2 * g[k] for k in range(1, len(g) - 1))


def from_cardinality_convex(ground: GroundSet, g: Sequence[int]) -> SetFunction:
    """``p(X) = g(|X|)`` for a discrete convex ``g`` with ``g(0) = 0``."""
    g = [int(v) for v in g]
    if len(g) != ground.n + 1:
        raise ValueError(f"g needs n+1 = {ground.n + 1} entries")
    if g[0] != 0:
        raise ValueError("g(0) must be 0")
    if not _is_convex_seq(g):
        raise NotSupermodular("g is not discrete convex")
    return SetFunction(ground, lambda X: g[popcount(X)], kind="cardinality",
                       params={"g": g})


def from_induced_edges(ground: GroundSet, edges: Sequence, offset_modular=None,
                       offset_const: int = 0) -> SetFunction:
    """Induced-edge count plus a modular offset; ``offset_const`` lifts ``p(S)``.

    ``edges`` are pairs of labels (a multiset). ``offset_const`` must be
    nonnegative: raising only the full-set value keeps supermodularity.
    """
    n = ground.n
    pairs = [(ground.index(u), ground.index(v)) for u, v in edges]
    emasks = [1 << u | 1 << v for u, v in pairs]
    offset = tuple(offset_modular) if offset_modular is not None else (0,) * n
    if isinstance(offset_modular, dict):
        offset = ground.vector(offset_modular)
    if len(offset) != n:
        raise ValueError("modular offset has wrong length")
    if offset_const < 0:
        raise NotSupermodular("offset_const must be nonnegative")
    full = ground.full

    def evaluate(X):
        val = sum(1 for e in emasks if e & X == e)
        val += sum(offset[i] for i in bits(X))
        if X == full:
            val += offset_const
        return val

    return SetFunction(ground, evaluate, kind="induced_edges",
                       params={"edges": [tuple(e) for e in edges],
                               "offset_modular": offset, "offset_const": int(offset_const)})


def from_matroid_cocomplement(ground: GroundSet, matroid: MatroidOracle,
                              offset_modular=None) -> SetFunction:
    """``p(X) = r(S) - r(S - X) + offset~(X)``: base polytope of the matroid, shifted."""
    if matroid.n != ground.n:
        raise InvalidMatroid("matroid size differs from the ground set")
    matroid.validate()
    n = ground.n
    offset = tuple(offset_modular) if offset_modular is not None else (0,) * n
    if isinstance(offset_modular, dict):
        offset = ground.vector(offset_modular)
    full = ground.full
    rS = matroid.rank(full)

    def evaluate(X):
        return rS - matroid.rank(full & ~X) + sum(offset[i] for i in bits(X))

    return SetFunction(ground, evaluate, kind="matroid_cocomplement",
                       params={"matroid": matroid, "offset_modular": offset})


def modular(ground: GroundSet, m: Sequence[int]) -> SetFunction:
    """``p(X) = m~(X)``; its base-polyhedron is the single point ``m``."""
    m = tuple(int(v) for v in m)
    return SetFunction(ground, lambda X: sum(m[i] for i in bits(X)), kind="modular",
                       params={"m": m})


def complement_b(p: SetFunction) -> SetFunction:
    """Complementary function ``b(X) = p(S) - p(S - X)`` (and vice versa)."""
    full, total = p.full, p.total
    sense = "sub" if p.sense == "super" else "super"
    return SetFunction(p.ground, lambda X: total - p(full & ~X), kind="complement",
                       params={"of": p}, sense=sense)


def lovasz_ext(p: SetFunction, pi: Sequence):
    """Linear extension of ``p`` along the ``pi``-decreasing order.

    Ties are broken by ground-set index; the value does not depend on it.
    For supermodular ``p`` this equals ``min {pi x : x in B}``.
    """
    n = p.n
    order = sorted(range(n), key=lambda i: (-pi[i], i))
    total = 0
    I = 0
    for j, i in enumerate(order):
        I |= 1 << i
        nxt = pi[order[j + 1]] if j + 1 < n else 0
        total += p(I) * (pi[i] - nxt)
    return total


def to_json(p: SetFunction) -> dict:
    g = p.ground
    if p.kind == "cardinality":
        body = {"kind": "cardinality", "g": list(p.params["g"])}
    elif p.kind == "induced_edges":
        body = {"kind": "induced_edges",
                "edges": [list(e) for e in p.params["edges"]],
                "offset_modular": g.as_dict(p.params["offset_modular"]),
                "offset_const": p.params["offset_const"]}
    elif p.kind == "matroid_cocomplement":
        M = p.params["matroid"]
        if M.kind == "uniform":
            mj = {"kind": "uniform", "k": M.params["k"]}
        elif M.kind == "partition":
            mj = {"kind": "partition", "blocks": [g.members(b) for b in M.params["blocks"]],
                  "caps": list(M.params["caps"])}
        else:
            mj = {"kind": "graphic", "edges": [list(e) for e in M.params["edges"]]}
        body = {"kind": "matroid_cocomplement", "matroid": mj,
                "offset_modular": g.as_dict(p.params["offset_modular"])}
    else:
        vals = p.table()
        body = {"kind": "table", "values": {g.key(X): vals[X] for X in range(1 << p.n)}}
    return {"ground_set": list(g.labels), "p": body}


def from_json(data: dict, validate: bool = True) -> SetFunction:
    ground = GroundSet(tuple(data["ground_set"]))
    desc = data["p"]
    kind = desc.get("kind")
    if kind == "table":
        return from_table(ground, desc["values"], validate=validate)
    if kind == "cardinality":
        return from_cardinality_convex(ground, desc["g"])
    if kind == "induced_edges":
        return from_induced_edges(ground, desc.get("edges", []),
                                  desc.get("offset_modular") or {},
                                  desc.get("offset_const", 0))
    if kind == "matroid_cocomplement":
        mj = desc["matroid"]
        mk = mj["kind"]
        if mk == "uniform":
            M = MatroidOracle.uniform(ground.n, mj["k"])
        elif mk == "partition":
            M = MatroidOracle.partition(ground.n, [ground.mask(b) for b in mj["blocks"]],
                                        mj["caps"])
        elif mk == "graphic":
            M = MatroidOracle.graphic(mj["edges"])
        else:
            raise ValueError(f"unknown matroid kind {mk!r}")
        return from_matroid_cocomplement(ground, M, desc.get("offset_modular") or {})
    raise ValueError(f"unknown oracle kind {kind!r}")


def sum_of(ground: GroundSet, *fns: SetFunction) -> SetFunction:
    """Table of the pointwise sum (supermodularity is preserved)."""
    tables = [f.table() for f in fns]
    return from_table(ground, [sum(col) for col in zip(*tables)], validate=False)


def modular_part(ground: GroundSet, x: Sequence) -> list:
    return subset_sums(x)
