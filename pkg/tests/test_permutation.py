import random
from itertools import permutations
from math import factorial

import pytest

from knapcrack.permutation import LehmerCode, factorial_carry, lehmer_to_index, permute


def test_worked_example_code():
    # 100 = 0*5! + 4*4! + 0*3! + 2*2! + 0*1! + 0*0!
    assert factorial_carry(100, 6).digits == (0, 4, 0, 2, 0, 0)


def test_worked_example_permutation():
    code = factorial_carry(100, 6)
    assert permute(list("ABCDEF"), code) == list("AFBECD")


def test_zero_and_max():
    assert factorial_carry(0, 6).digits == (0, 0, 0, 0, 0, 0)
    assert factorial_carry(719, 6).digits == (5, 4, 3, 2, 1, 0)


def test_out_of_range():
    with pytest.raises(ValueError):
        factorial_carry(720, 6)
    with pytest.raises(ValueError):
        factorial_carry(-1, 6)


def test_lehmer_to_index_golden():
    assert lehmer_to_index(LehmerCode((0, 4, 0, 2, 0, 0))) == 100
    assert lehmer_to_index(LehmerCode((0, 0, 0))) == 0
    assert lehmer_to_index(LehmerCode((5, 4, 3, 2, 1, 0))) == 719


def test_digit_bounds_enforced():
    with pytest.raises(ValueError):
        LehmerCode((0, 5, 0, 0, 0, 0))  # digit 2 may be at most n-2 = 4
    with pytest.raises(ValueError):
        LehmerCode((0, 0, 1))  # last digit must be 0


def test_roundtrip_exhaustive_small_n():
    for n in range(1, 9):
        for m in range(factorial(n)):
            assert lehmer_to_index(factorial_carry(m, n)) == m


def test_roundtrip_sampled_large_n():
    rng = random.Random(11)
    for n in (20, 64, 170):
        for _ in range(20):
            m = rng.randrange(factorial(n))
            assert lehmer_to_index(factorial_carry(m, n)) == m


def test_identity_and_reversal():
    items = ["x", "y", "z", "w"]
    assert permute(items, LehmerCode((0, 0, 0, 0))) == items
    assert permute(["A", "B", "C"], LehmerCode((2, 1, 0))) == ["C", "B", "A"]


def test_permute_is_permutation():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 10)
        m = rng.randrange(factorial(n))
        items = [rng.randint(0, 100) for _ in range(n)]
        out = permute(items, factorial_carry(m, n))
        assert sorted(out) == sorted(items)


def test_distinct_m_distinct_permutations():
    for n in range(1, 7):
        seen = {tuple(permute(list(range(n)), factorial_carry(m, n)))
                for m in range(factorial(n))}
        assert seen == set(permutations(range(n)))


def test_length_mismatch():
    with pytest.raises(ValueError):
        permute([1, 2, 3], factorial_carry(0, 4))
