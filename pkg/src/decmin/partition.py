"""Canonical (integer) and principal (rational) decompositions.

Both are chains of subsets cut out by maximizers of ``p(X) - lam |X|``.
The canonical chain carries the essential values ``beta_j`` on which dec-min
elements are near-uniform; the principal chain carries the critical values
``lam_i`` on which the minimum-norm point is constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .core import ConsistencyError, GroundSet, fraction_str, popcount
from .setfn import SetFunction


@lru_cache(maxsize=32)
def _cards(n: int) -> tuple:
    return tuple(popcount(X) for X in range(1 << n))


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _argmax(p: SetFunction, lam, within: int, *, largest: bool) -> int:
    """Lattice-extreme maximizer of ``p(X) - lam |X|`` over ``X`` inside ``within``."""
    lam = Fraction(lam)
    num, den = lam.numerator, lam.denominator
    vals = p.table()
    cards = _cards(p.n)
    best_key, best = None, 0
    X = within
    # iterate over all submasks of ``within`` (including the empty set)
    while True:
        score = den * vals[X] - num * cards[X]
        c = cards[X]
        key = (score, c if largest else -c, -X)
        if best_key is None or key > best_key:
            best_key, best = key, X
        if X == 0:
            break
        X = (X - 1) & within
    return best


def smallest_maximizer(p: SetFunction, lam) -> int:
    """``L(lam)``: the minimal maximizer of ``p(X) - lam |X|``."""
    return _argmax(p, lam, p.full, largest=False)


def largest_maximizer(p: SetFunction, lam) -> int:
    """Maximal maximizer of ``p(X) - lam |X|`` (the limit of ``L`` from below)."""
    return _argmax(p, lam, p.full, largest=True)


def maximizers(p: SetFunction, lam) -> list:
    lam = Fraction(lam)
    vals = p.table()
    cards = _cards(p.n)
    scores = [vals[X] - lam * cards[X] for X in range(p.full + 1)]
    top = max(scores)
    return [X for X, v in enumerate(scores) if v == top]


@dataclass(frozen=True)
class CanonicalDecomposition:
    ground: GroundSet
    betas: tuple
    chain: tuple
    partition: tuple
    pi_star: tuple
    delta_star: tuple

    @property
    def q(self) -> int:
        return len(self.betas)

    def block_of(self, s: int) -> int:
        for j, blk in enumerate(self.partition):
            if blk >> s & 1:
                return j
        raise IndexError(s)

    def to_json(self) -> dict:
        g = self.ground
        return {
            "betas": list(self.betas),
            "chain": [g.members(C) for C in self.chain],
            "partition": [g.members(S) for S in self.partition],
            "pi_star": g.as_dict(self.pi_star),
            "delta_star": g.as_dict(self.delta_star),
        }


@dataclass(frozen=True)
class PrincipalDecomposition:
    ground: GroundSet
    lambdas: tuple
    chain: tuple
    partition: tuple

    @property
    def r(self) -> int:
        return len(self.lambdas)

    def to_json(self) -> dict:
        g = self.ground
        return {
            "lambdas": [fraction_str(v) for v in self.lambdas],
            "chain": [g.members(C) for C in self.chain],
            "partition": [g.members(S) for S in self.partition],
        }


def _canonical_iterative(p: SetFunction):
    vals = p.table()
    cards = _cards(p.n)
    full = p.full
    C = 0
    betas, chain = [], []
    while C != full:
        free = full & ~C
        pC = vals[C]
        beta = None
        X = free
        while X:
            b = _ceil_div(vals[X | C] - pC, cards[X])
            if beta is None or b > beta:
                beta = b
            X = (X - 1) & free
        # smallest maximizer of h(X) = p(X u C) - (beta-1)|X| - p(C) over X inside free
        best_key, Sj = None, 0
        X = free
        while True:
            h = vals[X | C] - (beta - 1) * cards[X] - pC
            key = (h, -cards[X], -X)
            if best_key is None or key > best_key:
                best_key, Sj = key, X
            if X == 0:
                break
            X = (X - 1) & free
        if Sj == 0:
            raise ConsistencyError("empty canonical block")
        C |= Sj
        betas.append(beta)
        chain.append(C)
    return betas, chain


def _canonical_by_jumps(p: SetFunction):
    """Essential values as the integers ``beta`` with ``L(beta) != L(beta - 1)``."""
    vals = p.table()
    cards = _cards(p.n)
    beta = max(_ceil_div(vals[X], cards[X]) for X in range(1, p.full + 1))
    betas, chain = [], []
    prev = smallest_maximizer(p, beta)
    if prev != 0:
        raise ConsistencyError("L(beta_1) must be empty")
    while prev != p.full:
        cur = smallest_maximizer(p, beta - 1)
        if cur != prev:
            betas.append(beta)
            chain.append(cur)
        prev = cur
        beta -= 1
    return betas, chain


def beta_one(p: SetFunction) -> int:
    vals = p.table()
    cards = _cards(p.n)
    return max(_ceil_div(vals[X], cards[X]) for X in range(1, p.full + 1))


def canonical_decomposition(p: SetFunction, cross_check: bool = True) -> CanonicalDecomposition:
    betas, chain = _canonical_iterative(p)
    if cross_check:
        b2, c2 = _canonical_by_jumps(p)
        if (b2, c2) != (betas, chain):
            raise ConsistencyError(
                f"canonical chain mismatch: iterative {betas}/{chain} vs jumps {b2}/{c2}")
    n = p.n
    partition, prev = [], 0
    pi_star, delta_star = [0] * n, [0] * n
    for beta, C in zip(betas, chain):
        blk = C & ~prev
        partition.append(blk)
        for s in range(n):
            if blk >> s & 1:
                pi_star[s] = 2 * beta - 1
                delta_star[s] = beta - 1
        prev = C
    return CanonicalDecomposition(p.ground, tuple(betas), tuple(chain), tuple(partition),
                                  tuple(pi_star), tuple(delta_star))


def principal_decomposition(p: SetFunction) -> PrincipalDecomposition:
    """Critical values by a parametric (discrete Newton) sweep in exact rationals."""
    vals = p.table()
    cards = _cards(p.n)
    full = p.full
    C = 0
    lambdas, chain, partition = [], [], []
    while C != full:
        free = full & ~C
        lam = None
        X = free
        while X:
            r = Fraction(vals[X | C] - vals[C], cards[X])
            if lam is None or r > lam:
                lam = r
            X = (X - 1) & free
        nxt = largest_maximizer(p, lam)
        if nxt & C != C or nxt == C:
            raise ConsistencyError("principal chain failed to grow monotonically")
        lambdas.append(lam)
        chain.append(nxt)
        partition.append(nxt & ~C)
        C = nxt
    return PrincipalDecomposition(p.ground, tuple(lambdas), tuple(chain), tuple(partition))


def _ceil_frac(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


@dataclass
class RelationReport:
    index_map: list          # I(j), 1-based principal indices per canonical block
    clauses: dict            # clause name -> bool
    counterexample: Optional[str] = None

    @property
    def ok(self) -> bool:
        return all(self.clauses.values())

    def to_json(self) -> dict:
        return {"index_map": self.index_map, "clauses": self.clauses,
                "ok": self.ok, "counterexample": self.counterexample}


def relate_partitions(can: CanonicalDecomposition,
                      pri: PrincipalDecomposition) -> RelationReport:
    """Check that the canonical decomposition aggregates the principal one."""
    ceils = [_ceil_frac(lam) for lam in pri.lambdas]
    index_map = [[i + 1 for i, c in enumerate(ceils) if c == beta] for beta in can.betas]
    clauses = {}
    notes = []

    lo = min(ceils) - 2
    hi = max(ceils) + 2
    essential = set(can.betas)
    ok1 = True
    for beta in range(lo, hi + 1):
        has = any(beta - 1 < lam <= beta for lam in pri.lambdas)
        if has != (beta in essential):
            ok1 = False
            notes.append(f"beta={beta}: essential={beta in essential}, critical in range={has}")
    clauses["essential_iff_critical_in_interval"] = ok1

    ok2 = sorted(set(ceils), reverse=True) == list(can.betas)
    clauses["betas_are_rounded_lambdas"] = ok2
    if not ok2:
        notes.append(f"ceil(lambda)={sorted(set(ceils), reverse=True)} vs betas={list(can.betas)}")

    ok3 = True
    for j, idx in enumerate(index_map):
        union = 0
        for i in idx:
            union |= pri.partition[i - 1]
        if union != can.partition[j]:
            ok3 = False
            notes.append(f"block {j + 1} is not the union of principal blocks {idx}")
    clauses["blocks_aggregate"] = ok3

    ok4 = all(idx and can.chain[j] == pri.chain[max(idx) - 1]
              for j, idx in enumerate(index_map))
    clauses["canonical_chain_is_subchain"] = ok4
    if not ok4:
        notes.append("canonical chain member missing from the principal chain")

    return RelationReport(index_map, clauses, "; ".join(notes) or None)
