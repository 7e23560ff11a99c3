import random
from fractions import Fraction
from itertools import combinations

import pytest

from knapcrack.knapsack import (
    SuperIncreasingSequence,
    density,
    generate_superincreasing,
    is_superincreasing,
    solve_superincreasing,
    solve_superincreasing_unordered,
)


def brute_force_subset(weights, target):
    """Exhaustive oracle: all index subsets, smallest first."""
    n = len(weights)
    for r in range(n + 1):
        for idx in combinations(range(n), r):
            if sum(weights[i] for i in idx) == target:
                bits = [0] * n
                for i in idx:
                    bits[i] = 1
                return bits
    return None


def test_is_superincreasing_basic():
    assert is_superincreasing((1, 2, 4, 8))
    assert not is_superincreasing((1, 2, 3))  # 3 == 1+2, not >
    assert not is_superincreasing((0, 1))
    assert not is_superincreasing((-1, 5))
    assert is_superincreasing((7,))


def test_is_superincreasing_hand_sums():
    # margins: 3>2, 7>5, 15>12, 31>27
    seq = (2, 3, 7, 15, 31)
    running = 0
    for w in seq:
        assert w > running
        running += w
    assert is_superincreasing(seq)


def test_is_superincreasing_empty_raises():
    with pytest.raises(ValueError):
        is_superincreasing(())


def test_generate_single_weight():
    seq = generate_superincreasing(1, 5, seed=99)
    assert seq.n == 1
    assert seq.weights[0] >= 1


def test_generate_zero_slack_gives_powers_of_two():
    seq = generate_superincreasing(5, 0, seed=123)
    assert seq.weights == (1, 2, 4, 8, 16)


def test_generate_large_passes_invariant():
    seq = generate_superincreasing(1360, 8, seed=42)
    assert is_superincreasing(seq.weights)


def test_generate_deterministic():
    a = generate_superincreasing(40, 6, seed=7)
    b = generate_superincreasing(40, 6, seed=7)
    c = generate_superincreasing(40, 6, seed=8)
    assert a.weights == b.weights
    assert a.weights != c.weights


def test_generate_many_seeds_invariant():
    for seed in range(1000):
        seq = generate_superincreasing(12, 3, seed)
        assert is_superincreasing(seq.weights)


def test_solve_basic():
    seq = SuperIncreasingSequence((1, 2, 4, 8))
    assert solve_superincreasing(seq, 11) == [1, 1, 0, 1]
    assert solve_superincreasing(seq, 0) == [0, 0, 0, 0]
    assert solve_superincreasing(seq, 16) is None  # max sum is 15


def test_solve_rejects_bad_input():
    with pytest.raises(ValueError):
        solve_superincreasing((1, 2, 3), 4)
    with pytest.raises(ValueError):
        solve_superincreasing((1, 2, 4), -1)


def test_solve_agrees_with_brute_force():
    rng = random.Random(2024)
    for _ in range(60):
        n = rng.randint(1, 12)
        seq = generate_superincreasing(n, rng.randint(0, 4), rng.getrandbits(32))
        target = rng.randint(0, seq.total() + 2)
        got = solve_superincreasing(seq, target)
        expected = brute_force_subset(seq.weights, target)
        assert got == expected
        if got is not None:
            assert sum(b * w for b, w in zip(got, seq.weights)) == target


def test_solve_unordered_roundtrip():
    rng = random.Random(5)
    for _ in range(50):
        seq = generate_superincreasing(10, 3, rng.getrandbits(32))
        shuffled = list(seq.weights)
        rng.shuffle(shuffled)
        bits = [rng.randint(0, 1) for _ in shuffled]
        target = sum(b * w for b, w in zip(bits, shuffled))
        got = solve_superincreasing_unordered(shuffled, target)
        assert got == bits


def test_solve_unordered_zero_weights():
    with pytest.raises(ValueError):
        solve_superincreasing_unordered([0, 1, 2], 3)
    got = solve_superincreasing_unordered([0, 1, 2], 3, allow_zero=True)
    assert got == [0, 1, 1]


def test_density_values():
    assert density((2, 5, 9, 16)) == Fraction(1)  # 4 / log2(16)
    assert density(list(range(1, 10)) + [2 ** 20]) == Fraction(1, 2)  # 10 / log2(2^20)
    with pytest.raises(ValueError):
        density((1,))
    with pytest.raises(ValueError):
        density(())


def test_density_default_keygen_scale():
    seq = generate_superincreasing(1360, 8, seed=0)
    d = density(seq.weights)
    assert 0 < float(d) < 1.1
