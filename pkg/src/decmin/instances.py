"""Small named instances and seeded random generators."""

from __future__ import annotations

import random
from typing import Optional

from .core import GroundSet
from .setfn import (
    MatroidOracle,
    SetFunction,
    from_cardinality_convex,
    from_induced_edges,
    from_matroid_cocomplement,
    from_table,
    modular,
)


def two_element() -> SetFunction:
    """Three points (0,3), (1,2), (2,1)."""
    g = GroundSet.of_size(2)
    return from_table(g, {"": 0, "s1": 0, "s2": 1, "s1,s2": 3})


FOUR_ELEMENT_VALUES = {
    "": 0,
    "s1": 1, "s2": 1, "s3": 0, "s4": 0,
    "s1,s2": 3, "s3,s4": 0,
    "s1,s3": 1, "s2,s3": 1, "s1,s4": 1, "s2,s4": 1,
    "s1,s2,s3": 3, "s1,s2,s4": 3,
    "s1,s3,s4": 2, "s2,s3,s4": 2,
    "s1,s2,s3,s4": 4,
}


def four_element() -> SetFunction:
    """Five points; four of them are dec-min."""
    return from_table(GroundSet.of_size(4), FOUR_ELEMENT_VALUES)


def four_element_matroid() -> SetFunction:
    """Same function as :func:`four_element`, built from a graphic matroid.

    Elements s1, s2 are two sides of a triangle and s3, s4 are parallel copies
    of its third side; shifting the base polytope by (1,1,0,0) gives the table.
    """
    g = GroundSet.of_size(4)
    M = MatroidOracle.graphic([("a", "b"), ("b", "c"), ("a", "c"), ("a", "c")])
    return from_matroid_cocomplement(g, M, (1, 1, 0, 0))


def _direct_sum(g: GroundSet, blocks) -> SetFunction:
    """Direct sum of two-element pieces; ``blocks`` maps (s, t) to (p(s), p(t), p(st))."""
    table = [0] * (1 << g.n)
    for X in range(1 << g.n):
        total = 0
        for (s, t), (ps, pt, pst) in blocks.items():
            i, j = g.index(s), g.index(t)
            a, b = X >> i & 1, X >> j & 1
            total += pst if a and b else ps if a else pt if b else 0
        table[X] = total
    return from_table(g, table)


def crossing_pair() -> tuple:
    """Two M-convex sets meeting in {(2,0,0,0), (1,-1,1,1)}.

    The intersection has no least majorized element: the first point is
    inc-max and the second is dec-min.
    """
    g = GroundSet.of_size(4)
    p1 = _direct_sum(g, {("s1", "s3"): (1, 0, 2), ("s2", "s4"): (-1, 0, 0)})
    p2 = _direct_sum(g, {("s1", "s4"): (1, 0, 2), ("s2", "s3"): (-1, 0, 0)})
    return p1, p2


def modular_instance(m) -> SetFunction:
    return modular(GroundSet.of_size(len(m)), m)


# --------------------------------------------------------------------------
# random instances


def _convex_seq(rng: random.Random, n: int, bound: int) -> list:
    """Discrete convex ``g`` with ``g(0) = 0`` and ``|g| <= bound``."""
    while True:
        d = sorted(rng.randint(-3, 4) for _ in range(n))
        g = [0]
        for step in d:
            g.append(g[-1] + step)
        if max(abs(v) for v in g) <= bound:
            return g


def random_supermodular(rng: random.Random, n: Optional[int] = None,
                        bound: int = 20) -> SetFunction:
    """Seeded mixture of cardinality, induced-edge and matroid pieces.

    The sum of supermodular functions is supermodular; mixtures whose values
    leave ``[-bound, bound]`` are redrawn.
    """
    if n is None:
        n = rng.randint(2, 6)
    g = GroundSet.of_size(n)
    while True:
        parts = []
        kinds = rng.sample(["card", "edges", "matroid", "modular"], rng.randint(1, 3))
        for kind in kinds:
            if kind == "card":
                parts.append(from_cardinality_convex(g, _convex_seq(rng, n, bound // 2)))
            elif kind == "edges":
                edges = [tuple(rng.sample(g.labels, 2)) for _ in range(rng.randint(0, n + 1))]
                parts.append(from_induced_edges(g, edges, None, rng.randint(0, 2)))
            elif kind == "matroid":
                parts.append(from_matroid_cocomplement(g, _random_matroid(rng, n)))
            else:
                parts.append(modular(g, [rng.randint(-3, 3) for _ in range(n)]))
        total = [sum(col) for col in zip(*(f.table() for f in parts))]
        if max(abs(v) for v in total) <= bound:
            return from_table(g, total)


def _random_matroid(rng: random.Random, n: int) -> MatroidOracle:
    kind = rng.choice(["uniform", "partition", "graphic"])
    if kind == "uniform":
        return MatroidOracle.uniform(n, rng.randint(0, n))
    if kind == "partition":
        labels = [rng.randint(0, 2) for _ in range(n)]
        blocks, caps = [], []
        for b in sorted(set(labels)):
            mask = sum(1 << i for i, v in enumerate(labels) if v == b)
            blocks.append(mask)
            caps.append(rng.randint(0, bin(mask).count("1")))
        return MatroidOracle.partition(n, blocks, caps)
    verts = rng.randint(2, 4)
    return MatroidOracle.graphic([tuple(rng.sample(range(verts), 2)) for _ in range(n)])


def random_instances(seed: int, count: int, n_range=(2, 6), bound: int = 20) -> list:
    rng = random.Random(seed)
    return [random_supermodular(rng, rng.randint(*n_range), bound) for _ in range(count)]
