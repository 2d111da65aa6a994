import math
import random
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birchpart.birch import check_pair_lemma, count_birch, count_birch_for_point, valid_blocks
from birchpart.configs import gen_line_balanced, gen_random, gen_sierksma_birch
from birchpart.errors import InconsistencyDetected, NotGeneralPosition, SizeMismatch
from birchpart.kernel import Configuration, is_general_position
from birchpart.partitions import Partition

from oracles import naive_birch_count, origin_in_simplex

EPS = F(1, 100)
# (2,0) and (0,2) are tilted off the axes so the set is generic w.r.t. the origin
SIX = Configuration(2, ((1, 0), (0, 1), (-1, -1), (2, 2 * EPS), (-2 * EPS, 2), (-2, -2 * (1 + EPS))))
SIX_VALID = {(0, 1, 2), (0, 1, 5), (0, 2, 4), (0, 4, 5), (1, 2, 3), (1, 3, 5), (2, 3, 4), (3, 4, 5)}


def line(*xs):
    return Configuration(1, tuple((F(x),) for x in xs))


def test_valid_blocks_six_points():
    assert is_general_position(SIX, (0, 0))
    brute = {t for t in combinations(range(6), 3) if origin_in_simplex([SIX[i] for i in t])}
    assert brute == SIX_VALID
    assert valid_blocks(SIX) == SIX_VALID


def test_valid_blocks_trivial():
    half_plane = Configuration(2, ((1, 1), (2, 5), (3, -4), (4, 11), (6, -7), (7, 3)))
    assert valid_blocks(half_plane) == frozenset()
    assert valid_blocks(line(-1, 1)) == {(0, 1)}


def test_valid_blocks_errors():
    with pytest.raises(SizeMismatch):
        valid_blocks(Configuration(2, ((1, 0), (0, 1))))
    with pytest.raises(NotGeneralPosition):
        valid_blocks(Configuration(2, ((1, 0), (2, 0), (0, 1))))


def test_count_six_points_matches_brute_force():
    report = count_birch(SIX, collect_witnesses=True)
    assert report.count == naive_birch_count(SIX.points) == 4
    assert report.k == 2
    assert len(set(report.witnesses)) == 4
    assert Partition(((0, 1, 2), (3, 4, 5))) in report.witnesses


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_line_balanced_is_k_factorial(k):
    assert count_birch(gen_line_balanced(k)).count == math.factorial(k)


def test_line_closed_form_exhaustive():
    # every sign pattern of 2k nonzero points on the line
    for k in range(1, 4):
        for negatives in range(2 * k + 1):
            xs = [-(i + 1) for i in range(negatives)] + [i + 1 for i in range(2 * k - negatives)]
            expected = math.factorial(k) if negatives == k else 0
            assert count_birch(line(*xs)).count == expected


def test_sierksma_counts():
    assert count_birch(gen_sierksma_birch(2, 3)).count == 36
    assert count_birch(gen_sierksma_birch(2, 2)).count == 4


def test_origin_outside_hull_gives_zero():
    X = gen_random(2, 9, 1, 50, wrt_origin=True)
    shifted = Configuration(2, tuple((x + 200, y) for x, y in X.points))
    assert count_birch(shifted).count == 0


def test_witnesses_distinct_and_valid():
    X = gen_sierksma_birch(2, 3)
    report = count_birch(X, collect_witnesses=True)
    assert len(report.witnesses) == len(set(report.witnesses)) == report.count
    for part in report.witnesses:
        assert all(origin_in_simplex([X[i] for i in b]) for b in part)


def test_witnesses_off_by_default():
    assert count_birch(gen_line_balanced(2)).witnesses is None


def test_count_for_arbitrary_point():
    X = gen_line_balanced(2)
    moved = [(x + 10,) for (x,) in X.points]
    assert count_birch_for_point(moved, (10,)) == 2


def random_instances(d, k, count, seed):
    rng = random.Random(seed)
    for _ in range(count):
        yield gen_random(d, k * (d + 1), rng.getrandbits(32), 20, wrt_origin=True)


@pytest.mark.parametrize("d,k", [(2, 2), (2, 3), (3, 2)])
def test_evenness_and_lower_bound(d, k):
    for X in random_instances(d, k, 70, seed=d * 10 + k):
        c = count_birch(X).count
        assert c % 2 == 0
        assert c == 0 or c >= math.factorial(k)


@pytest.mark.parametrize("d,k", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_matches_naive_oracle(d, k):
    for X in random_instances(d, k, 8, seed=100 + d * 10 + k):
        assert count_birch(X).count == naive_birch_count(X.points)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(0, 5), st.integers(1, 30), st.integers(1, 30))
def test_ray_invariance(seed, i, num, den):
    X = gen_random(2, 6, seed, 20, wrt_origin=True)
    pts = list(X.points)
    pts[i] = tuple(F(num, den) * c for c in pts[i])
    if len(set(pts)) < 6 or not is_general_position(pts, (0, 0)):
        return
    assert count_birch(Configuration(2, tuple(pts))).count == count_birch(X).count


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32), st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)),
                                         max_size=6))
def test_linear_invariance(seed, shears):
    X = gen_random(3, 8, seed, 20, wrt_origin=True)
    M = [[int(i == j) for j in range(3)] for i in range(3)]
    for i, j, c in shears:
        if i != j:
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    mapped = tuple(tuple(sum(M[r][c] * p[c] for c in range(3)) for r in range(3)) for p in X.points)
    assert count_birch(Configuration(3, mapped)).count == count_birch(X).count


def test_odd_count_is_reported():
    # three points on a line: k=1 is exempt from evenness, nothing raised
    assert count_birch(line(-1, 2)).count == 1


def test_inconsistency_raised_on_odd(monkeypatch):
    import birchpart.birch as birch

    monkeypatch.setattr(birch, "_count", lambda *a: 3)
    with pytest.raises(InconsistencyDetected):
        birch.count_birch(gen_line_balanced(2))
    assert birch.count_birch(gen_line_balanced(2), check=False).count == 3


@pytest.mark.parametrize(
    "Y, expected",
    [
        ([(1, 0), (0, 1), (-1, -1), (-2, -1)], 2),
        ([(1, 0), (2, 1), (3, -1), (1, 5)], 0),
        ([(-2,), (-1,), (1,)], 2),
    ],
)
def test_pair_lemma_examples(Y, expected):
    assert check_pair_lemma(Y) == expected


def test_pair_lemma_triples():
    Y = [(1, 0), (0, 1), (-1, -1), (-2, -1)]
    inside = [t for t in combinations(range(4), 3) if origin_in_simplex([Y[i] for i in t])]
    assert inside == [(0, 1, 2), (0, 1, 3)]


def test_pair_lemma_rejects_degenerate():
    with pytest.raises(NotGeneralPosition):
        check_pair_lemma([(1, 0), (2, 0), (0, 1), (-1, -1)])
    with pytest.raises(SizeMismatch):
        check_pair_lemma([(1, 0), (0, 1), (-1, -1)])


@pytest.mark.parametrize("d", [1, 2, 3])
def test_pair_lemma_random(d):
    rng = random.Random(d)
    for _ in range(60):
        Y = gen_random(d, d + 2, rng.getrandbits(32), 20, wrt_origin=True)
        assert check_pair_lemma(Y.points) in (0, 2)
