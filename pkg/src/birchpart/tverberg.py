"""Tverberg partitions: counting, type classification and lower bounds."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence, Union

from .errors import (
    InvalidInput,
    NotGeneralPosition,
    NotPrimePower,
    SizeMismatch,
    UnclassifiablePartition,
)
from .kernel import (
    Configuration,
    Sign,
    is_general_position,
    linear_feasible,
    make_point,
    orientation,
    solve,
)
from .partitions import Partition, iter_partitions


@dataclass(frozen=True)
class TypeI:
    """One singleton block {vertex}; every other block is a d-simplex."""

    vertex: int

    @property
    def k(self) -> int:
        return 1

    @property
    def signature(self) -> str:
        return "I"


@dataclass(frozen=True)
class TypeII:
    """k low-dimensional blocks meeting in a point, plus q-k d-simplices."""

    k: int

    @property
    def signature(self) -> str:
        return f"II(k={self.k})"


PartitionType = Union[TypeI, TypeII]


@dataclass
class TverbergReport:
    total: int
    q: int
    d: int
    by_type: dict = field(default_factory=dict)
    witnesses: Optional[list] = None
    elapsed: float = 0.0


def hulls_have_common_point(blocks: Sequence[Sequence]) -> bool:
    """Decide whether the convex hulls of the blocks share a point.

    Unknowns are barycentric weights per block; the weighted points of
    every block must coincide with those of block 0.
    """
    blocks = [[make_point(p) for p in b] for b in blocks]
    if not blocks or any(not b for b in blocks):
        raise InvalidInput("every block must be nonempty")
    d = len(blocks[0][0])
    if any(len(p) != d for b in blocks for p in b):
        raise InvalidInput("points of mixed dimension")
    if len(blocks) == 1:
        return True

    offsets = []
    nvars = 0
    for b in blocks:
        offsets.append(nvars)
        nvars += len(b)

    rows, rhs = [], []
    for off, b in zip(offsets, blocks):
        row = [0] * nvars
        for j in range(len(b)):
            row[off + j] = 1
        rows.append(row)
        rhs.append(1)
    first = blocks[0]
    for off, b in zip(offsets[1:], blocks[1:]):
        for c in range(d):
            row = [0] * nvars
            for j, p in enumerate(first):
                row[j] = -p[c]
            for j, p in enumerate(b):
                row[off + j] = p[c]
            rows.append(row)
            rhs.append(0)
    return linear_feasible(rows, rhs, [True] * nvars)


def _size_signatures(d: int, q: int) -> list:
    """(small block sizes, number of d-simplices) for every admissible type.

    k = 1 gives the single vertex of Type I; k >= 2 the Type II families.
    """
    out = []
    for k in range(1, min(d, q) + 1):
        target = (d + 1) * k - d
        for sizes in _multisets(k, 1, d, target):
            out.append((sizes, q - k))
    return out


def _multisets(k: int, lo: int, hi: int, total: int):
    if k == 0:
        if total == 0:
            yield ()
        return
    for s in range(lo, hi + 1):
        if s * k > total:
            break
        for rest in _multisets(k - 1, s, hi, total - s):
            yield (s,) + rest


def _small_blocks(items: tuple, sizes: list, after: int, used: frozenset, chosen: list):
    """Place the low-dimensional blocks in increasing order of their minimum."""
    if not sizes:
        yield list(chosen), used
        return
    for size in sorted(set(sizes)):
        rest_sizes = list(sizes)
        rest_sizes.remove(size)
        free = [i for i in items if i > after and i not in used]
        for anchor_pos, anchor in enumerate(free):
            for combo in combinations(free[anchor_pos + 1:], size - 1):
                block = (anchor,) + combo
                chosen.append(block)
                yield from _small_blocks(items, rest_sizes, anchor, used | set(block), chosen)
                chosen.pop()


def _meeting_point(blocks: list):
    """Common point of the hulls of blocks whose affine hulls meet in one point.

    Returns the point, False when the unique affine intersection lies
    outside some hull, or None when the system is singular (the blocks are
    not in general position relative to each other).
    """
    if len(blocks) == 1 and len(blocks[0]) == 1:
        return blocks[0][0]
    d = len(blocks[0][0])
    nvars = sum(map(len, blocks))
    rows, rhs = [], []
    off = 0
    offsets = []
    for b in blocks:
        offsets.append(off)
        row = [0] * nvars
        for j in range(len(b)):
            row[off + j] = 1
        rows.append(row)
        rhs.append(1)
        off += len(b)
    for o, b in zip(offsets[1:], blocks[1:]):
        for c in range(d):
            row = [0] * nvars
            for j, p in enumerate(blocks[0]):
                row[j] = -p[c]
            for j, p in enumerate(b):
                row[o + j] = p[c]
            rows.append(row)
            rhs.append(0)
    if len(rows) != nvars:
        return None
    lam = solve(rows, rhs)
    if lam is None:
        return None
    if any(x < 0 for x in lam):
        return False
    return tuple(sum(lam[j] * p[c] for j, p in enumerate(blocks[0])) for c in range(d))


def _contains_closed(simplex: list, p: tuple) -> bool:
    shifted = [tuple(a - b for a, b in zip(x, p)) for x in simplex]
    o = orientation(shifted)
    if o == Sign.ZERO:
        return hulls_have_common_point([simplex, [p]])
    zero = (Fraction(0),) * len(p)
    for i in range(len(shifted)):
        s = orientation(shifted[:i] + [zero] + shifted[i + 1:])
        if s != Sign.ZERO and s != o:
            return False
    return True


def count_tverberg(X: Configuration, q: int, collect_witnesses: bool = False) -> TverbergReport:
    """Count unordered partitions of X into q blocks whose hulls share a point.

    Only the block-size patterns that occur in general position are
    enumerated.  The low-dimensional blocks of a candidate pin down the
    only possible common point; the d-simplices must then all contain it.
    Every surviving partition is confirmed by one exact feasibility solve.
    """
    start = time.perf_counter()
    d = X.dim
    if q < 2:
        raise InvalidInput("q must be at least 2")
    if len(X) != (d + 1) * (q - 1) + 1:
        raise SizeMismatch(f"need {(d + 1) * (q - 1) + 1} points for q={q}, d={d}, got {len(X)}")
    if not is_general_position(X):
        raise NotGeneralPosition("configuration is not in general position")

    pts = X.points
    memo: dict = {}

    def meets(a: tuple, b: tuple) -> bool:
        key = (a, b) if a < b else (b, a)
        hit = memo.get(key)
        if hit is None:
            hit = memo[key] = hulls_have_common_point([[pts[i] for i in a], [pts[i] for i in b]])
        return hit

    def accept(block, chosen):
        return all(meets(block, other) for other in chosen)

    def candidates(small: list, left: list, n_full: int):
        point = _meeting_point([[pts[i] for i in b] for b in small])
        if point is False:
            return
        if point is None:
            if not all(meets(a, b) for a, b in combinations(small, 2)):
                return
            yield from iter_partitions(left, [d + 1] * n_full, accept, small)
            return
        valid = {
            b for b in combinations(left, d + 1)
            if _contains_closed([pts[i] for i in b], point)
        }
        for blocks in iter_partitions(left, [d + 1] * n_full, lambda b, _: b in valid):
            yield small + blocks

    items = tuple(range(len(X)))
    total = 0
    by_type: dict = {}
    witnesses = [] if collect_witnesses else None
    for small_sizes, n_full in _size_signatures(d, q):
        for small, used in _small_blocks(items, list(small_sizes), -1, frozenset(), []):
            left = [i for i in items if i not in used]
            for blocks in candidates(small, left, n_full):
                if not hulls_have_common_point([[pts[i] for i in b] for b in blocks]):
                    continue
                part = Partition.from_blocks(blocks)
                kind = classify(part, X, q)
                total += 1
                by_type[kind.signature] = by_type.get(kind.signature, 0) + 1
                if witnesses is not None:
                    witnesses.append(part)
    if witnesses is not None:
        witnesses.sort()
    return TverbergReport(total=total, q=q, d=d, by_type=by_type, witnesses=witnesses,
                          elapsed=time.perf_counter() - start)


def classify(p: Partition, X: Configuration, q: int) -> PartitionType:
    d = X.dim
    blocks = list(p.blocks)
    if len(blocks) != q or sum(map(len, blocks)) != len(X):
        raise UnclassifiablePartition(f"not a partition of {len(X)} points into {q} blocks")
    singles = [b for b in blocks if len(b) == 1]
    if len(singles) == 1 and all(len(b) == d + 1 for b in blocks if len(b) != 1):
        return TypeI(vertex=singles[0][0])
    small = [b for b in blocks if len(b) <= d]
    k = len(small)
    if (
        1 < k <= min(d, q)
        and sum(map(len, small)) == (d + 1) * k - d
        and all(len(b) == d + 1 for b in blocks if len(b) > d)
    ):
        return TypeII(k=k)
    raise UnclassifiablePartition(f"block sizes {p.sizes()} match neither Tverberg type")


def tverberg_lower_bound(q: int, d: int, observed_type: Optional[PartitionType] = None) -> int:
    if q < 2 or d < 1:
        raise InvalidInput("need q >= 2 and d >= 1")
    k = d if observed_type is None else observed_type.k
    return math.factorial(max(q - k, 0))


def prime_power(q: int) -> tuple:
    """Return (p, r) with q = p**r, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    n, p = q, 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    r = 0
    while n % p == 0:
        n //= p
        r += 1
    if n != 1:
        raise NotPrimePower(f"{q} has more than one prime factor")
    return p, r


def topological_lower_bound(q: int, d: int) -> Fraction:
    """Lower bound on Tverberg q-tuples for prime powers q = p^r."""
    if d < 1:
        raise InvalidInput("d must be at least 1")
    _, r = prime_power(q)
    n = (d + 1) * (q - 1)
    return Fraction(1, math.factorial(q - 1)) * Fraction(q, r + 1) ** ((n + 1) // 2)
