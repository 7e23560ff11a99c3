"""Super-increasing sequences, subset-sum instances and the greedy decoder."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from mpmath import mp


def is_superincreasing(weights: Sequence[int]) -> bool:
    """True iff every weight is positive and exceeds the sum of its predecessors."""
    if len(weights) == 0:
        raise ValueError("empty weight list")
    total = 0
    for w in weights:
        if w <= 0 or w <= total:
            return False
        total += w
    return True


@dataclass(frozen=True)
class SuperIncreasingSequence:
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not is_superincreasing(self.weights):
            raise ValueError("weights are not super-increasing")

    @property
    def n(self) -> int:
        return len(self.weights)

    def total(self) -> int:
        return sum(self.weights)


@dataclass(frozen=True)
class SubsetSumInstance:
    weights: tuple
    target: int

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        if self.target < 0:
            raise ValueError("target must be non-negative")


def generate_superincreasing(n: int, slack_bits: int, seed: int) -> SuperIncreasingSequence:
    """Deterministic super-increasing sequence: each term is the running sum
    plus a random offset in [1, 2**slack_bits]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if slack_bits < 0:
        raise ValueError("slack_bits must be >= 0")
    rng = random.Random(seed)
    hi = 1 << slack_bits
    weights: List[int] = []
    total = 0
    for _ in range(n):
        w = total + rng.randint(1, hi)
        weights.append(w)
        total += w
    return SuperIncreasingSequence(tuple(weights))


def solve_superincreasing(seq, s: int) -> Optional[List[int]]:
    """Greedy scan from the largest weight down; None when the residual is nonzero.

    Accepts a SuperIncreasingSequence or a raw weight list (validated)."""
    if not isinstance(seq, SuperIncreasingSequence):
        seq = SuperIncreasingSequence(tuple(seq))
    if s < 0:
        raise ValueError("target must be non-negative")
    weights = seq.weights
    bits = [0] * len(weights)
    residual = s
    for i in range(len(weights) - 1, -1, -1):
        if residual >= weights[i]:
            bits[i] = 1
            residual -= weights[i]
    if residual != 0:
        return None
    return bits


def solve_superincreasing_unordered(
    weights: Sequence[int], target: int, allow_zero: bool = False
) -> Optional[List[int]]:
    """Greedy solve when `weights` is a shuffled subset of a super-increasing
    sequence. Bits are returned in the original positions.

    Zero weights are permitted with allow_zero=True; their bits are set to 0
    (a zero weight cannot be pinned down by the sum alone)."""
    if target < 0:
        raise ValueError("target must be non-negative")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be non-negative")
    nonzero = [i for i in range(len(weights)) if weights[i] > 0]
    if len(nonzero) < len(weights) and not allow_zero:
        raise ValueError("zero weight in strict mode")
    order = sorted(nonzero, key=lambda i: weights[i])
    sorted_w = [weights[i] for i in order]
    if not sorted_w:
        return [0] * len(weights) if target == 0 else None
    if not is_superincreasing(sorted_w):
        raise ValueError("weights are not a shuffled super-increasing set")
    bits = [0] * len(weights)
    residual = target
    for idx in reversed(order):
        if residual >= weights[idx]:
            bits[idx] = 1
            residual -= weights[idx]
    if residual != 0:
        return None
    return bits


def density(weights: Sequence[int]) -> Fraction:
    """Knapsack density n / log2(max weight), with log2 rounded to 64
    fractional bits."""
    if len(weights) == 0:
        raise ValueError("empty weight list")
    m = max(weights)
    if m < 2:
        raise ValueError("max weight must be >= 2")
    with mp.workprec(m.bit_length() + 96):
        scaled = int(mp.nint(mp.log(m, 2) * (1 << 64)))
    log2m = Fraction(scaled, 1 << 64)
    return Fraction(len(weights)) / log2m
