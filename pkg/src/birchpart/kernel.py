"""Exact rational arithmetic and geometric predicates.

Every coordinate is a :class:`fractions.Fraction`; nothing is ever rounded.
Points are plain tuples of Fractions so they hash and compare exactly.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    DegenerateSimplex,
    InvalidInput,
    NotGeneralPosition,
    SingularGenerators,
)

Rational = Fraction
Point = tuple  # tuple[Fraction, ...]


def as_rational(value) -> Fraction:
    """Convert an int, Fraction or exact string ("3", "1/3", "0.25") to a Fraction.

    Floats are refused: they are almost never the number the user meant.
    """
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational coordinate: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"not a rational coordinate: {value!r}") from exc
    raise InvalidInput(f"not a rational coordinate: {value!r}")


def make_point(coords: Iterable) -> Point:
    return tuple(as_rational(c) for c in coords)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Configuration:
    """A labelled list of distinct points in R^dim."""

    dim: int
    points: tuple
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise InvalidInput(f"dimension must be a positive integer, got {self.dim!r}")
        pts = tuple(make_point(p) for p in self.points)
        for i, p in enumerate(pts):
            if len(p) != self.dim:
                raise InvalidInput(f"point {i} has {len(p)} coordinates, expected {self.dim}")
        if len(set(pts)) != len(pts):
            raise NotGeneralPosition("configuration contains duplicate points")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, value) -> "Sign":
        return cls((value > 0) - (value < 0))


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (a positive factor)."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def determinant_sign(rows: Sequence[Sequence[Fraction]]) -> Sign:
    return Sign.of(_bareiss_det(_integer_rows(rows)))


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank by fraction-free elimination."""
    m = _integer_rows(rows)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pr = m[r]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [a * pr[c] - f * b for a, b in zip(m[i], pr)]
        r += 1
        if r == len(m):
            break
    return r


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Solve a square system exactly; None when the matrix is singular."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return None
        a[c], a[pivot] = a[pivot], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n] for row in a]


def _check_simplex(points: Sequence[Point]) -> int:
    if not points:
        raise InvalidInput("empty point list")
    d = len(points[0])
    if len(points) != d + 1 or any(len(p) != d for p in points):
        raise InvalidInput(f"need {d + 1} points of dimension {d}, got {len(points)}")
    return d


def orientation(simplex: Sequence[Point]) -> Sign:
    """Sign of det [p_i | 1] for d+1 points in R^d."""
    d = _check_simplex(simplex)
    p0 = simplex[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in simplex[1:]]
    s = determinant_sign(diffs)
    return Sign(-s) if d % 2 else s


def _affinely_independent(points: Sequence[Point]) -> bool:
    if len(points) <= 1:
        return True
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    return rank(diffs) == len(points) - 1


def is_general_position(X, p: Optional[Sequence] = None) -> bool:
    """True iff no m <= d+1 of the points (plus ``p``) are affinely dependent.

    Subsets of an affinely independent set are independent, so only the
    largest subsets need checking.
    """
    if isinstance(X, Configuration):
        dim, pts = X.dim, list(X.points)
    else:
        pts = [make_point(x) for x in X]
        if not pts:
            return True
        dim = len(pts[0])
    if p is not None:
        p = make_point(p)
        if len(p) != dim:
            raise InvalidInput(f"point has {len(p)} coordinates, expected {dim}")
        pts.append(p)
    if any(len(x) != dim for x in pts):
        raise InvalidInput("points of mixed dimension")
    size = min(len(pts), dim + 1)
    if size == dim + 1:
        return all(orientation(s) != Sign.ZERO for s in itertools.combinations(pts, size))
    return _affinely_independent(pts)


def simplex_contains_origin(simplex: Sequence[Point]) -> bool:
    """Strict containment of the origin in conv(simplex).

    Raises DegenerateSimplex for a flat simplex and NotGeneralPosition when
    the origin sits on the boundary.  An origin that is merely on the line
    of a facet but clearly outside still answers False.
    """
    o = orientation(simplex)
    if o == Sign.ZERO:
        raise DegenerateSimplex("simplex is affinely dependent")
    d = len(simplex) - 1
    zero = (Fraction(0),) * d
    pts = list(simplex)
    on_facet = False
    for i in range(d + 1):
        s = orientation(pts[:i] + [zero] + pts[i + 1:])
        if s == -o:
            return False
        if s == Sign.ZERO:
            on_facet = True
    if on_facet:
        raise NotGeneralPosition("origin lies on the boundary of the simplex")
    return True


def cone_contains(w: Sequence, generators: Sequence[Point]) -> bool:
    """True iff w is a strictly positive combination of the d generators."""
    w = make_point(w)
    d = len(w)
    if len(generators) != d or any(len(s) != d for s in generators):
        raise InvalidInput(f"need {d} generators of dimension {d}")
    # columns are the generators
    matrix = [[generators[j][i] for j in range(d)] for i in range(d)]
    lam = solve(matrix, w)
    if lam is None:
        raise SingularGenerators("cone generators are linearly dependent")
    return all(x > 0 for x in lam)


def linear_feasible(rows: Sequence[Sequence], rhs: Sequence, nonneg: Sequence[bool]) -> bool:
    """Decide whether {A x = b, x_i >= 0 for flagged i} has a solution.

    Phase-one simplex over exact fractions with Bland's least-index rule,
    which cannot cycle.
    """
    m = len(rows)
    n = len(nonneg)
    if len(rhs) != m or any(len(r) != n for r in rows):
        raise InvalidInput("inconsistent system dimensions")
    if m == 0:
        return True

    # free variables become x+ - x-
    col_map = []
    for j, flag in enumerate(nonneg):
        col_map.append((j, 1))
        if not flag:
            col_map.append((j, -1))
    ncols = len(col_map)

    tab = []
    b = []
    for row, bi in zip(rows, rhs):
        bi = Fraction(bi)
        sgn = -1 if bi < 0 else 1
        tab.append([Fraction(sgn * s * row[j]) for j, s in col_map] + [Fraction(0)] * m)
        b.append(sgn * bi)
    for i in range(m):
        tab[i][ncols + i] = Fraction(1)
    total = ncols + m
    basis = [ncols + i for i in range(m)]

    # reduced costs of the phase-one objective sum(artificials)
    cost = [-sum(tab[i][j] for i in range(m)) for j in range(ncols)] + [Fraction(0)] * m
    value = sum(b)

    while True:
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = b[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # cannot happen: the phase-one objective is bounded below by 0
            raise AssertionError("unbounded phase-one problem")
        piv_row = tab[leave]
        inv = 1 / piv_row[enter]
        piv_row = [x * inv for x in piv_row]
        tab[leave] = piv_row
        b[leave] *= inv
        bl = b[leave]
        for i in range(m):
            if i != leave:
                f = tab[i][enter]
                if f:
                    row = tab[i]
                    tab[i] = [x - f * y if y else x for x, y in zip(row, piv_row)]
                    b[i] -= f * bl
        f = cost[enter]
        cost = [x - f * y if y else x for x, y in zip(cost, piv_row)]
        value += f * bl
        basis[leave] = enter
    return value == 0
