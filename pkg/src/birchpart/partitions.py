"""Canonical enumeration of set partitions with prescribed block sizes."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import factorial, prod
from typing import Callable, Iterator, Optional, Sequence


@dataclass(frozen=True, order=True)
class Partition:
    """An unordered partition of point indices, kept in canonical form.

    Blocks are sorted tuples, ordered by their minimum element, so two
    partitions compare equal exactly when they are the same partition.
    """

    blocks: tuple

    @classmethod
    def from_blocks(cls, blocks) -> "Partition":
        canon = sorted(tuple(sorted(b)) for b in blocks)
        return cls(tuple(canon))

    def sizes(self) -> list[int]:
        return sorted(len(b) for b in self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return " | ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


Accept = Callable[[tuple, list], bool]


def iter_partitions(
    items: Sequence[int],
    sizes: Sequence[int],
    accept: Optional[Accept] = None,
    chosen: Optional[list] = None,
) -> Iterator[list]:
    """Yield every unordered partition of ``items`` whose block sizes match ``sizes``.

    The smallest unassigned item anchors the next block, so each unordered
    partition comes out exactly once.  ``accept(block, chosen)`` may veto a
    block given the blocks already placed, which prunes the whole subtree.
    """
    if sum(sizes) != len(items):
        raise ValueError("block sizes do not add up to the number of items")
    yield from _rec(tuple(sorted(items)), Counter(sizes), accept, list(chosen or []))


def _rec(remaining, counts, accept, chosen):
    if not remaining:
        yield list(chosen)
        return
    anchor, rest = remaining[0], remaining[1:]
    for size in sorted(s for s, c in counts.items() if c > 0):
        counts[size] -= 1
        for combo in combinations(rest, size - 1):
            block = (anchor,) + combo
            if accept is not None and not accept(block, chosen):
                continue
            chosen.append(block)
            left = tuple(x for x in rest if x not in combo)
            yield from _rec(left, counts, accept, chosen)
            chosen.pop()
        counts[size] += 1


def count_partitions(sizes: Sequence[int]) -> int:
    """Number of unordered partitions of sum(sizes) items with these block sizes."""
    n = sum(sizes)
    mult = Counter(sizes)
    return factorial(n) // (
        prod(factorial(s) for s in sizes) * prod(factorial(c) for c in mult.values())
    )
