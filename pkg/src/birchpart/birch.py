"""Counting Birch partitions for the origin."""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import InconsistencyDetected, NotGeneralPosition, SizeMismatch
from .kernel import (
    Configuration,
    Point,
    is_general_position,
    make_point,
    simplex_contains_origin,
)
from .partitions import Partition


@dataclass
class BirchReport:
    count: int
    k: int
    witnesses: Optional[list] = None
    elapsed: float = 0.0


def _block_count(X: Configuration) -> int:
    n, d = len(X), X.dim
    if n == 0 or n % (d + 1):
        raise SizeMismatch(f"{n} points cannot be split into blocks of size {d + 1}")
    return n // (d + 1)


def _require_general_position(X: Configuration) -> None:
    origin = (0,) * X.dim
    if not is_general_position(X, origin):
        raise NotGeneralPosition("configuration is not in general position with respect to the origin")


def valid_blocks(X: Configuration) -> frozenset:
    """All (d+1)-subsets of indices whose simplex strictly contains the origin."""
    _block_count(X)
    _require_general_position(X)
    return _valid_blocks(X)


def _valid_blocks(X: Configuration) -> frozenset:
    pts = X.points
    return frozenset(
        idx
        for idx in combinations(range(len(pts)), X.dim + 1)
        if simplex_contains_origin([pts[i] for i in idx])
    )


def _count(remaining: tuple, size: int, valid: frozenset, chosen: list, sink) -> int:
    if not remaining:
        if sink is not None:
            sink.append(Partition(tuple(chosen)))
        return 1
    anchor, rest = remaining[0], remaining[1:]
    total = 0
    for combo in combinations(rest, size - 1):
        block = (anchor,) + combo
        if block not in valid:
            continue
        chosen.append(block)
        left = tuple(x for x in rest if x not in combo)
        total += _count(left, size, valid, chosen, sink)
        chosen.pop()
    return total


def count_birch(X: Configuration, collect_witnesses: bool = False, check: bool = True) -> BirchReport:
    """Count unordered partitions of X into (d+1)-blocks that all contain the origin.

    With ``check`` set, an odd count for k >= 2 raises InconsistencyDetected,
    since evenness is guaranteed on valid input.  Campaigns turn it off so
    they can record the violation instead.
    """
    start = time.perf_counter()
    k = _block_count(X)
    _require_general_position(X)
    valid = _valid_blocks(X)
    sink = [] if collect_witnesses else None
    count = _count(tuple(range(len(X))), X.dim + 1, valid, [], sink)
    if check and k >= 2 and count % 2:
        raise InconsistencyDetected(f"odd Birch count {count} for k={k}")
    return BirchReport(count=count, k=k, witnesses=sink, elapsed=time.perf_counter() - start)


def count_birch_for_point(points: Sequence[Point], p: Sequence) -> int:
    """Birch count for an arbitrary point p, by translating p to the origin."""
    p = make_point(p)
    shifted = [tuple(a - b for a, b in zip(x, p)) for x in points]
    return count_birch(Configuration(len(p), tuple(shifted))).count


def check_pair_lemma(Y: Sequence[Point], check: bool = True) -> int:
    """Number of (d+1)-subsets of d+2 points whose simplex contains the origin.

    The answer is always 0 or 2; anything else raises InconsistencyDetected.
    """
    pts = [make_point(y) for y in Y]
    d = len(pts[0]) if pts else 0
    if len(pts) != d + 2:
        raise SizeMismatch(f"need {d + 2} points in dimension {d}, got {len(pts)}")
    if not is_general_position(pts, (0,) * d):
        raise NotGeneralPosition("points are not in general position with respect to the origin")
    n = sum(simplex_contains_origin(list(s)) for s in combinations(pts, d + 1))
    if check and n not in (0, 2):
        raise InconsistencyDetected(f"{n} simplices contain the origin, expected 0 or 2")
    return n
