"""Exit criteria.  Each test is one criterion; the summary prints PASS/FAIL per line."""
import math
import random
import time
from fractions import Fraction as F

import pytest

from birchpart.birch import count_birch
from birchpart.campaigns import run_campaign
from birchpart.configs import gen_line_balanced, gen_random, gen_sierksma_birch, gen_sierksma_tverberg
from birchpart.errors import NotPrimePower
from birchpart.kernel import (
    Configuration,
    cone_contains,
    determinant_sign,
    is_general_position,
    simplex_contains_origin,
)
from birchpart.tverberg import count_tverberg, topological_lower_bound

from oracles import naive_birch_count, naive_tverberg_count

SEED = 2024


@pytest.mark.acceptance(1, "Sierksma Birch count (2,3) = 36 in < 5 s")
def test_sierksma_birch_36():
    start = time.perf_counter()
    count = count_birch(gen_sierksma_birch(2, 3)).count
    elapsed = time.perf_counter() - start
    assert count == 36 == math.factorial(3) ** 2
    assert elapsed < 5


@pytest.mark.acceptance(2, "Sierksma Tverberg count (2,4) = 36 in < 60 s")
def test_sierksma_tverberg_36():
    start = time.perf_counter()
    total = count_tverberg(gen_sierksma_tverberg(2, 4), 4).total
    elapsed = time.perf_counter() - start
    assert total == 36
    assert elapsed < 60


@pytest.mark.acceptance(3, "line closed form B_0 = k! for k = 1..5 in < 10 s")
def test_line_closed_form():
    start = time.perf_counter()
    counts = [count_birch(gen_line_balanced(k)).count for k in range(1, 6)]
    elapsed = time.perf_counter() - start
    assert counts == [math.factorial(k) for k in range(1, 6)]
    assert elapsed < 10


BIRCH_CASES = [(2, 2), (2, 3), (3, 2)]


@pytest.mark.acceptance(4, "parity campaign, 200 trials at (2,2),(2,3),(3,2): no odd count, < 5 min")
def test_parity_campaign():
    start = time.perf_counter()
    for d, k in BIRCH_CASES:
        result = run_campaign("parity", d, k, 200, seed=SEED)
        assert result.trials == 200
        assert result.violations == [], (d, k, result.violations)
        assert all(c % 2 == 0 for c in result.histogram)
    assert time.perf_counter() - start < 300


@pytest.mark.acceptance(5, "lower-bound campaign on the same trials: every positive count >= k!")
def test_lower_bound_campaign():
    for d, k in BIRCH_CASES:
        result = run_campaign("lower-bound", d, k, 200, seed=SEED)
        assert result.violations == [], (d, k, result.violations)
        assert all(c == 0 or c >= math.factorial(k) for c in result.histogram)
        # same seed, same configurations as the parity campaign
        assert result.histogram == run_campaign("parity", d, k, 200, seed=SEED).histogram


@pytest.mark.acceptance(6, "pair lemma: 500 random (d+2)-sets per d in {1,2,3} give 0 or 2, < 1 min")
def test_pair_lemma_campaign():
    start = time.perf_counter()
    for d in (1, 2, 3):
        result = run_campaign("pair-lemma", d, 0, 500, seed=SEED)
        assert result.violations == []
        assert set(result.histogram) <= {0, 2}
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance(7, "convexity lemma: 1000 (simplex, vertex) instances, zero mismatches")
def test_convexity_lemma_equivalence():
    rng = random.Random(SEED)
    mismatches = 0
    for _ in range(1000):
        d = rng.randint(1, 4)
        S = list(gen_random(d, d + 1, rng.getrandbits(32), 50, wrt_origin=True).points)
        i = rng.randrange(d + 1)
        p = S[i]
        rest = S[:i] + S[i + 1:]
        if simplex_contains_origin(S) != cone_contains(tuple(-c for c in p), rest):
            mismatches += 1
    assert mismatches == 0


@pytest.mark.acceptance(8, "Tverberg parity/bound at (1,3),(1,4),(2,4) x100; Radon (2,2) x50 = 1; < 10 min")
def test_tverberg_campaign():
    start = time.perf_counter()
    for d, q in [(1, 3), (1, 4), (2, 4)]:
        result = run_campaign("tverberg-parity", d, q, 100, seed=SEED)
        assert result.violations == [], (d, q, result.violations)
        assert all(t % 2 == 0 for t in result.histogram)
        if (d, q) == (2, 4):
            assert min(result.histogram) >= 2
    rng = random.Random(SEED)
    for _ in range(50):
        X = gen_random(2, 4, rng.getrandbits(32), 1000, wrt_origin=False)
        assert count_tverberg(X, 2).total == 1 == naive_tverberg_count(X.points, 2)
    assert time.perf_counter() - start < 600


@pytest.mark.acceptance(9, "oracle equivalence on 20 random instances with <= 9 points (Birch and Tverberg)")
def test_oracle_equivalence():
    rng = random.Random(SEED + 9)
    birch_shapes = [(1, 3), (2, 2), (2, 3), (3, 2)]
    tverberg_shapes = [(1, 3), (1, 4), (2, 2), (2, 3), (3, 2)]
    for i in range(20):
        d, k = birch_shapes[i % len(birch_shapes)]
        X = gen_random(d, k * (d + 1), rng.getrandbits(32), 30, wrt_origin=True)
        assert len(X) <= 9
        assert count_birch(X).count == naive_birch_count(X.points)

        d, q = tverberg_shapes[i % len(tverberg_shapes)]
        Y = gen_random(d, (d + 1) * (q - 1) + 1, rng.getrandbits(32), 1000, wrt_origin=False)
        assert len(Y) <= 9
        assert count_tverberg(Y, q).total == naive_tverberg_count(Y.points, q)


def _random_invertible(rng, d):
    while True:
        M = [[rng.randint(-4, 4) for _ in range(d)] for _ in range(d)]
        if determinant_sign([[F(x) for x in row] for row in M]) != 0:
            return M


@pytest.mark.acceptance(10, "ray scaling and invertible linear maps leave B_0 unchanged on 50 instances")
def test_invariance_suite():
    rng = random.Random(SEED + 10)
    shapes = [(2, 2), (2, 3), (3, 2)]
    for i in range(50):
        d, k = shapes[i % len(shapes)]
        X = gen_random(d, k * (d + 1), rng.getrandbits(32), 30, wrt_origin=True)
        base = count_birch(X).count
        origin = (0,) * d

        while True:
            j = rng.randrange(len(X))
            lam = F(rng.randint(1, 60), rng.randint(1, 60))
            pts = list(X.points)
            pts[j] = tuple(lam * c for c in pts[j])
            if len(set(pts)) == len(pts) and is_general_position(pts, origin):
                break
        assert count_birch(Configuration(d, tuple(pts))).count == base

        M = _random_invertible(rng, d)
        mapped = tuple(tuple(sum(M[r][c] * p[c] for c in range(d)) for r in range(d)) for p in X.points)
        assert count_birch(Configuration(d, mapped)).count == base


@pytest.mark.acceptance(11, "topological bound: (3,2) = 27/16, (2,1) = 1, q = 6 rejected")
def test_topological_bound_values():
    assert topological_lower_bound(3, 2) == F(27, 16)
    assert topological_lower_bound(2, 1) == F(1)
    assert isinstance(topological_lower_bound(3, 2), F)
    with pytest.raises(NotPrimePower):
        topological_lower_bound(6, 2)
