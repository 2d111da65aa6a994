"""Reference configurations, random sampling, and configuration files.

Text format::

    version=1
    dim=2
    label=anything
    1 0
    -1/3 2
    0.25 -7

Blank lines and ``#`` comments are ignored.  The JSON variant carries the
same fields, with coordinates as strings or integers.
"""
from __future__ import annotations

import json
import random
from itertools import combinations
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ExhaustedRetries, InvalidInput, ParseError
from .kernel import (
    Configuration,
    Sign,
    as_rational,
    format_rational,
    is_general_position,
    orientation,
)

FORMAT_VERSION = 1
MAX_RETRIES = 10_000
KINDS = ("sierksma_birch", "sierksma_tverberg", "line_balanced", "random")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    d: int = 2
    k_or_q: int = 2
    epsilon: Fraction = Fraction(1, 20)
    seed: int = 0
    coord_bound: int = 0
    n: Optional[int] = None
    wrt_origin: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInput(f"unknown generator kind {self.kind!r}")
        if not 0 < self.epsilon < Fraction(1, 10):
            raise InvalidInput("epsilon must lie strictly between 0 and 1/10")
        if self.d < 1 or self.k_or_q < 1:
            raise InvalidInput("d and k/q must be positive")

    def build(self) -> Configuration:
        if self.kind == "sierksma_birch":
            return gen_sierksma_birch(self.d, self.k_or_q, self.epsilon)
        if self.kind == "sierksma_tverberg":
            return gen_sierksma_tverberg(self.d, self.k_or_q, self.epsilon)
        if self.kind == "line_balanced":
            return gen_line_balanced(self.k_or_q)
        n = self.n if self.n is not None else self.k_or_q * (self.d + 1)
        bound = self.coord_bound or max(n, 10)
        return gen_random(self.d, n, self.seed, bound, self.wrt_origin)


def simplex_vertices(d: int) -> list:
    """e_1, ..., e_d and -(e_1 + ... + e_d): a rational simplex centred at 0."""
    verts = [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
    verts.append(tuple(Fraction(-1) for _ in range(d)))
    return verts


def _offset(t: Fraction, d: int, scale: Fraction) -> tuple:
    # points on the moment curve have pairwise distinct directions
    if d == 1:
        return (scale * t,)
    return tuple(scale * t ** (i + 1) for i in range(d))


def _clusters(d: int, size: int, epsilon: Fraction) -> list:
    verts = simplex_vertices(d)
    total = size * (d + 1) + 1
    pts = []
    for j, v in enumerate(verts):
        for i in range(size):
            t = Fraction(j * size + i + 1, total)
            delta = _offset(t, d, epsilon)
            pts.append(tuple(a + b for a, b in zip(v, delta)))
    return pts


def gen_sierksma_birch(d: int, k: int, epsilon=Fraction(1, 20)) -> Configuration:
    """k points clustered tightly around each vertex of a simplex centred at the origin."""
    epsilon = as_rational(epsilon)
    if d < 1 or k < 1 or not 0 < epsilon < Fraction(1, 10):
        raise InvalidInput("need d >= 1, k >= 1 and 0 < epsilon < 1/10")
    origin = (0,) * d
    while True:
        pts = _clusters(d, k, epsilon)
        if is_general_position(pts, origin):
            return Configuration(d, tuple(pts), label=f"sierksma_birch d={d} k={k} eps={epsilon}")
        epsilon /= 2


def gen_sierksma_tverberg(d: int, q: int, epsilon=Fraction(1, 20)) -> Configuration:
    """Clusters of q-1 points at the simplex vertices plus one point near the centre."""
    epsilon = as_rational(epsilon)
    if d < 1 or q < 2 or not 0 < epsilon < Fraction(1, 10):
        raise InvalidInput("need d >= 1, q >= 2 and 0 < epsilon < 1/10")
    while True:
        pts = _clusters(d, q - 1, epsilon)
        # the exact barycentre can be collinear with cluster points
        centre = tuple(-x for x in _offset(Fraction(1, 3), d, epsilon / 7))
        pts.append(centre)
        if is_general_position(pts):
            return Configuration(d, tuple(pts), label=f"sierksma_tverberg d={d} q={q} eps={epsilon}")
        epsilon /= 2


def gen_line_balanced(k: int) -> Configuration:
    if k < 1:
        raise InvalidInput("k must be at least 1")
    pts = [(Fraction(-i),) for i in range(k, 0, -1)] + [(Fraction(i),) for i in range(1, k + 1)]
    return Configuration(1, tuple(pts), label=f"line_balanced k={k}")


def gen_random(d: int, n: int, seed: int, coord_bound: int, wrt_origin: bool = True) -> Configuration:
    """n lattice points from [-coord_bound, coord_bound]^d, seeded and in general position.

    Points are drawn one at a time; a candidate that breaks general
    position (with the points so far, and the origin if requested) is
    redrawn.
    """
    if d < 1 or n < d + 1:
        raise InvalidInput("need d >= 1 and n >= d + 1")
    if coord_bound < n:
        raise InvalidInput("coord_bound must be at least n")
    rng = random.Random(seed)
    origin = (Fraction(0),) * d
    pts: list = []
    anchors = [origin] if wrt_origin else []
    for _ in range(n):
        for _attempt in range(MAX_RETRIES):
            cand = tuple(Fraction(rng.randint(-coord_bound, coord_bound)) for _ in range(d))
            if _still_general(anchors + pts, cand, d):
                pts.append(cand)
                break
        else:
            raise ExhaustedRetries(f"no admissible point after {MAX_RETRIES} draws; raise coord_bound")
    return Configuration(d, tuple(pts), label=f"random d={d} n={n} seed={seed} bound={coord_bound}")


def _still_general(existing: list, cand: tuple, d: int) -> bool:
    if cand in existing:
        return False
    size = min(len(existing) + 1, d + 1)
    if size < d + 1:
        return is_general_position(existing + [cand])
    return all(
        orientation(list(rest) + [cand]) != Sign.ZERO for rest in combinations(existing, d)
    )


def write_configuration(X: Configuration) -> str:
    lines = [f"version={FORMAT_VERSION}", f"dim={X.dim}"]
    if X.label:
        lines.append(f"label={X.label}")
    lines += [" ".join(format_rational(c) for c in p) for p in X.points]
    return "\n".join(lines) + "\n"


def read_configuration(text: str) -> Configuration:
    dim = None
    label = ""
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" in line:
            key, _, value = line.partition("=")
            key = key.strip()
            if key == "dim":
                try:
                    dim = int(value)
                except ValueError:
                    raise ParseError(f"bad dimension {value!r}", line=lineno, field="dim") from None
                if dim < 1:
                    raise ParseError("dimension must be positive", line=lineno, field="dim")
            elif key == "label":
                label = value.strip()
            elif key == "version":
                if value.strip() != str(FORMAT_VERSION):
                    raise ParseError(f"unsupported version {value.strip()!r}", line=lineno, field="version")
            else:
                raise ParseError(f"unknown header {key!r}", line=lineno)
            continue
        if dim is None:
            raise ParseError("point before dim= header", line=lineno)
        fields = line.split("#", 1)[0].split()
        if len(fields) != dim:
            raise ParseError(f"expected {dim} coordinates, got {len(fields)}", line=lineno)
        coords = []
        for i, f in enumerate(fields, start=1):
            try:
                coords.append(as_rational(f))
            except InvalidInput:
                raise ParseError(f"not an exact number: {f!r}", line=lineno, field=i) from None
        points.append(tuple(coords))
    if dim is None:
        raise ParseError("missing dim= header")
    try:
        return Configuration(dim, tuple(points), label=label)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def write_configuration_json(X: Configuration) -> str:
    doc = {
        "version": FORMAT_VERSION,
        "dim": X.dim,
        "label": X.label,
        "points": [[format_rational(c) for c in p] for p in X.points],
    }
    return json.dumps(doc, indent=2) + "\n"


def read_configuration_json(text: str) -> Configuration:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(doc, dict) or "dim" not in doc or "points" not in doc:
        raise ParseError("expected an object with 'dim' and 'points'")
    if doc.get("version", FORMAT_VERSION) != FORMAT_VERSION:
        raise ParseError(f"unsupported version {doc['version']!r}", field="version")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"bad dimension {dim!r}", field="dim")
    points = []
    for i, p in enumerate(doc["points"]):
        if not isinstance(p, list) or len(p) != dim:
            raise ParseError(f"point {i} must be a list of {dim} coordinates", field=f"points[{i}]")
        try:
            points.append(tuple(as_rational(c) for c in p))
        except InvalidInput as exc:
            raise ParseError(str(exc), field=f"points[{i}]") from None
    try:
        return Configuration(dim, tuple(points), label=str(doc.get("label", "")))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def load(path) -> Configuration:
    with open(path) as fh:
        text = fh.read()
    if str(path).endswith(".json"):
        return read_configuration_json(text)
    return read_configuration(text)


def save(X: Configuration, path) -> None:
    text = write_configuration_json(X) if str(path).endswith(".json") else write_configuration(X)
    with open(path, "w") as fh:
        fh.write(text)
