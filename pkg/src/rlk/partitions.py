"""Set partitions of a node set, their counts, and block dynamics."""

from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

from .incidence import BlockPartition

__all__ = [
    "BlockProfile",
    "DEFAULT_ENUM_GUARD",
    "DimensionLaw",
    "InvalidBlocks",
    "InvalidSplit",
    "TooLarge",
    "bell",
    "coalesce",
    "dimension_law",
    "enumerate_partitions",
    "enumeration_guard",
    "integer_partitions",
    "profile_multiplicity",
    "stirling2",
    "thicken",
]

DEFAULT_ENUM_GUARD = 12


class TooLarge(ValueError):
    pass


class InvalidBlocks(ValueError):
    pass


class InvalidSplit(ValueError):
    pass


def enumeration_guard() -> int:
    """Largest n accepted by :func:`enumerate_partitions` (env ``RLK_ENUM_GUARD``)."""
    raw = os.environ.get("RLK_ENUM_GUARD")
    if raw is None or raw.strip() == "":
        return DEFAULT_ENUM_GUARD
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"RLK_ENUM_GUARD must be an integer, got {raw!r}") from None


def _restricted_growth_strings(n: int) -> Iterator[list[int]]:
    """All a[0..n-1] with a[0] = 0 and a[i] <= 1 + max(a[:i]), in lex order."""
    if n == 0:
        yield []
        return
    a = [0] * n
    m = [0] * n  # m[i] = max(a[:i+1])
    while True:
        yield a
        i = n - 1
        while i > 0 and a[i] > m[i - 1]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = m[i]


def enumerate_partitions(n: int) -> list[BlockPartition]:
    guard = enumeration_guard()
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > guard:
        raise TooLarge(f"n={n} exceeds the enumeration guard {guard} (set RLK_ENUM_GUARD to override)")
    out = []
    for rgs in _restricted_growth_strings(n):
        blocks: list[list[int]] = [[] for _ in range(max(rgs, default=-1) + 1)]
        for k, b in enumerate(rgs):
            blocks[b].append(k)
        out.append(BlockPartition(n, tuple(tuple(b) for b in blocks)))
    return out


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = k * (prev[k] if k < len(prev) else 0) + prev[k - 1]
    return tuple(row)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k)."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    if k > n:
        return 0
    # iterate rows instead of recursing so large n does not hit the recursion limit
    for i in range(n + 1):
        _stirling_row(i)
    return _stirling_row(n)[k]


def bell(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    for i in range(n + 1):
        _stirling_row(i)
    return sum(_stirling_row(n))


@dataclass(frozen=True)
class BlockProfile:
    """Block sizes of a set partition, weakly decreasing."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"{parts} is not a weakly decreasing list of positive integers")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> BlockProfile:
        """Parse ``"2,1"`` or ``"(2,1)"``; the parts are sorted for convenience."""
        cleaned = text.strip().strip("()[]")
        if not cleaned:
            return cls(())
        return cls(tuple(sorted((int(t) for t in cleaned.split(",")), reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


def profile_multiplicity(profile: BlockProfile | Sequence[int]) -> int:
    """Number of set partitions of an n-set with the given block sizes."""
    if not isinstance(profile, BlockProfile):
        profile = BlockProfile(tuple(profile))
    denom = 1
    for part in profile.parts:
        denom *= math.factorial(part)
    for mult in Counter(profile.parts).values():
        denom *= math.factorial(mult)
    return math.factorial(profile.n) // denom


def integer_partitions(n: int, k: int | None = None) -> Iterator[BlockProfile]:
    """Integer partitions of n (optionally with exactly k parts), largest part first."""

    def rec(remaining: int, largest: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield prefix
            return
        for part in range(min(remaining, largest), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))

    for parts in rec(n, n, ()):
        if k is None or len(parts) == k:
            yield BlockProfile(parts)


class DimensionLaw(NamedTuple):
    dim_node: int
    dim_geom: int
    dim_rel: int


def dimension_law(n: int, p: BlockPartition) -> DimensionLaw:
    if p.n != n:
        raise ValueError(f"partition is of range({p.n}), not range({n})")
    k = len(p)
    return DimensionLaw(n, k, n - k)


def coalesce(p: BlockPartition, which: Iterable[int]) -> BlockPartition:
    """Merge the blocks with the given indices into one block."""
    which = set(which)
    if len(which) < 2 or any(not 0 <= b < len(p) for b in which):
        raise InvalidBlocks(f"need at least two valid block indices out of {len(p)}, got {sorted(which)}")
    merged = tuple(k for b in sorted(which) for k in p.blocks[b])
    rest = tuple(block for b, block in enumerate(p.blocks) if b not in which)
    return BlockPartition(p.n, rest + (merged,))


def thicken(p: BlockPartition, block: int, split: Sequence[Iterable[int]]) -> BlockPartition:
    """Split one block into m >= 2 nonempty parts."""
    if not 0 <= block < len(p):
        raise InvalidSplit(f"block index {block} out of range")
    parts = [tuple(s) for s in split]
    target = p.blocks[block]
    flat = sorted(k for s in parts for k in s)
    if len(parts) < 2 or any(not s for s in parts) or flat != sorted(target):
        raise InvalidSplit(f"{parts} is not a split of block {target} into at least two parts")
    rest = tuple(b for i, b in enumerate(p.blocks) if i != block)
    return BlockPartition(p.n, rest + tuple(parts))
