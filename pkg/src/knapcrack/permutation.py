"""Factorial number system (Lehmer codes) and the permutation they index."""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import List, Sequence


@dataclass(frozen=True)
class LehmerCode:
    digits: tuple

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        n = len(self.digits)
        if n == 0:
            raise ValueError("empty Lehmer code")
        for i, d in enumerate(self.digits):
            # digit i (0-based) selects among n-i remaining items
            if not 0 <= d <= n - i - 1:
                raise ValueError(f"digit {d} at position {i} out of range [0, {n - i - 1}]")

    @property
    def n(self) -> int:
        return len(self.digits)


def factorial_carry(m: int, n: int) -> LehmerCode:
    """Factorial-base digits (u_1 ... u_n) of m, greedy division by (n-i)!."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if m < 0 or m >= factorial(n):
        raise ValueError(f"m must lie in [0, {n}!)")
    digits: List[int] = []
    r = m
    for i in range(1, n + 1):
        base = factorial(n - i)
        u, r = divmod(r, base)
        digits.append(u)
    return LehmerCode(tuple(digits))


def lehmer_to_index(code: LehmerCode) -> int:
    """Inverse of factorial_carry: sum u_i * (n-i)!."""
    n = code.n
    return sum(u * factorial(n - i) for i, u in enumerate(code.digits, start=1))


def permute(elements: Sequence, code: LehmerCode) -> list:
    """Reorder `elements` by Lehmer code: step i emits the (u_i+1)-th item not
    yet selected."""
    if len(elements) != code.n:
        raise ValueError("element count does not match code length")
    remaining = list(elements)
    out = []
    for u in code.digits:
        out.append(remaining.pop(u))
    return out
