"""Ground sets, bitmask subsets and exact vector helpers.

Vectors are plain tuples indexed by ground-set position. Integer vectors hold
``int`` entries; rational vectors hold :class:`fractions.Fraction` entries.
Subsets are ``int`` bitmasks, bit ``i`` standing for the ``i``-th label.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Number = Union[int, Fraction]
IntVector = tuple
RatVector = tuple

#: Largest ground set for which "for every subset" scans are allowed.
MAX_ENUM_N = 24


class DecminError(Exception):
    """Base class for library errors."""


class GroundSetTooLarge(DecminError):
    pass


class EnumerationError(DecminError):
    """Raised when an enumeration would exceed its configured cap."""


class InfeasibleError(DecminError):
    pass


class ConsistencyError(DecminError):
    """An internal cross-check failed; indicates a bug, never bad input."""


@dataclass(frozen=True)
class GroundSet:
    labels: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        if not labels:
            raise ValueError("ground set must be nonempty")
        if len(set(labels)) != len(labels):
            raise ValueError("ground set labels must be distinct")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(labels)})

    @classmethod
    def of_size(cls, n: int, prefix: str = "s") -> "GroundSet":
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, label) -> int:
        return self._index[str(label)]

    def mask(self, labels: Iterable) -> int:
        m = 0
        for s in labels:
            m |= 1 << self.index(s)
        return m

    def members(self, mask: int) -> list:
        return [self.labels[i] for i in bits(mask)]

    def key(self, mask: int) -> str:
        """Comma-joined sorted labels; the empty set maps to ``""``."""
        return ",".join(sorted(self.members(mask)))

    def from_key(self, key: str) -> int:
        key = key.strip()
        if not key:
            return 0
        return self.mask(part.strip() for part in key.split(","))

    def vector(self, mapping: dict, default=0) -> tuple:
        unknown = set(map(str, mapping)) - set(self.labels)
        if unknown:
            raise KeyError(f"unknown ground-set labels: {sorted(unknown)}")
        values = {str(k): v for k, v in mapping.items()}
        return tuple(values.get(s, default) for s in self.labels)

    def as_dict(self, x: Sequence) -> dict:
        return {s: x[i] for i, s in enumerate(self.labels)}


def check_enumerable(n: int) -> None:
    if n > MAX_ENUM_N:
        raise GroundSetTooLarge(
            f"subset enumeration needs n <= {MAX_ENUM_N}, got n = {n}")


def bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subsets(n: int) -> range:
    check_enumerable(n)
    return range(1 << n)


def subset_sums(x: Sequence) -> list:
    """All ``x~(Z)`` indexed by mask, built incrementally in O(2^n)."""
    n = len(x)
    check_enumerable(n)
    sums = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + x[low.bit_length() - 1]
    return sums


def tilde_sum(x: Sequence, Z: int):
    """Sum of ``x`` over the subset ``Z``."""
    return sum((x[i] for i in bits(Z)), 0)


def chi(Z: int, n: int) -> tuple:
    """Characteristic vector of ``Z``."""
    return tuple(1 if Z >> i & 1 else 0 for i in range(n))


def sort_desc(x: Sequence) -> list:
    return sorted(x, reverse=True)


def sort_asc(x: Sequence) -> list:
    return sorted(x)


def add(x: Sequence, y: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence, y: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Sequence) -> tuple:
    return tuple(c * a for a in x)


def dot(x: Sequence, y: Sequence):
    return sum((a * b for a, b in zip(x, y)), 0)


def exchange(x: Sequence, s: int, t: int) -> tuple:
    """``x + chi_s - chi_t``."""
    y = list(x)
    y[s] += 1
    y[t] -= 1
    return tuple(y)


def square_sum(x: Sequence):
    return sum((a * a for a in x), 0)


def floor_vec(x: Sequence) -> tuple:
    return tuple(int(Fraction(a).__floor__()) for a in x)


def ceil_vec(x: Sequence) -> tuple:
    return tuple(int(Fraction(a).__ceil__()) for a in x)


def histogram(x: Sequence) -> dict:
    out: dict = {}
    for a in x:
        out[a] = out.get(a, 0) + 1
    return dict(sorted(out.items(), reverse=True))


def fraction_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
