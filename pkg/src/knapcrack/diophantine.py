"""Simultaneous Diophantine approximation via lattice reduction.

Given rationals a_1..a_n and epsilon in (0,1), find one denominator q with
|a_i - p_i/q| <= epsilon/q for all i. The lattice has first row
(epsilon/Q, a_1, ..., a_n) over a -1 diagonal; the reduced basis contains a
vector (q*eps/Q, q*a_1 - p_1, ..., q*a_n - p_n) of norm below 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .lattice import LatticeBasis, lll_reduce, norm_sq


def _ceil_fourth_root(num: int, den: int) -> int:
    """Smallest integer c with c**4 * den >= num (num, den > 0)."""
    from math import isqrt

    c = isqrt(isqrt((num + den - 1) // den))
    while c ** 4 * den < num:
        c += 1
    return max(c, 1)


def default_q_bound(n: int, epsilon: Fraction) -> int:
    """ceil(2**(n(n+1)/4) * epsilon**(-n)); the exponent may be fractional, so
    the ceiling is taken through an exact integer fourth root."""
    eps = Fraction(epsilon)
    num = (1 << (n * (n + 1))) * eps.denominator ** (4 * n)
    den = eps.numerator ** (4 * n)
    return _ceil_fourth_root(num, den)


@dataclass(frozen=True)
class SdaProblem:
    alphas: tuple
    epsilon: Fraction
    q_bound: Optional[int] = None  # lattice scaling bound Q; default from epsilon

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(Fraction(a) for a in self.alphas))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if len(self.alphas) == 0:
            raise ValueError("need at least one alpha")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.q_bound is not None and self.q_bound < 1:
            raise ValueError("q_bound must be >= 1")

    @property
    def n(self) -> int:
        return len(self.alphas)

    def effective_q(self) -> int:
        if self.q_bound is not None:
            return self.q_bound
        return default_q_bound(self.n, self.epsilon)


@dataclass(frozen=True)
class SdaSolution:
    q: int
    ps: tuple
    quality: Fraction  # max_i |q*a_i - p_i|

    def __post_init__(self):
        if self.q <= 0:
            raise ValueError("q must be positive")


def build_sda_lattice(problem: SdaProblem) -> LatticeBasis:
    """(n+1)x(n+1) rows: (eps/Q, a_1..a_n) then -1 diagonal; |det| = eps/Q."""
    n = problem.n
    lam = problem.epsilon / problem.effective_q()
    rows = [tuple([lam] + list(problem.alphas))]
    for i in range(1, n + 1):
        row = [Fraction(0)] * (n + 1)
        row[i] = Fraction(-1)
        rows.append(tuple(row))
    return LatticeBasis(tuple(rows))


def _q_within_bound(q: int, n: int, eps: Fraction) -> bool:
    # q < 2**(n(n+1)/4) * eps**-(n+1), compared via fourth powers
    lhs = q ** 4 * eps.numerator ** (4 * (n + 1))
    rhs = (1 << (n * (n + 1))) * eps.denominator ** (4 * (n + 1))
    return lhs < rhs


def solve_sda(problem: SdaProblem) -> Optional[SdaSolution]:
    """Reduce the construction lattice and scan rows for an admissible
    (q, p_1..p_n); None when no reduced row qualifies."""
    n = problem.n
    eps = problem.epsilon
    lam = eps / problem.effective_q()
    reduced = lll_reduce(build_sda_lattice(problem))
    rows = sorted(reduced.rows, key=norm_sq)
    for v in rows:
        if v[0] == 0:
            continue
        if norm_sq(v) >= 1:
            continue
        qf = v[0] / lam
        if qf.denominator != 1:
            continue
        q = int(qf)
        if q < 0:
            q = -q
        if not _q_within_bound(q, n, eps):
            continue
        ps = []
        ok = True
        for a in problem.alphas:
            target = q * a
            p = (target.numerator * 2 + target.denominator) // (2 * target.denominator)  # round half up
            if abs(target - p) > eps:
                ok = False
                break
            ps.append(p)
        if not ok:
            continue
        quality = max(abs(q * a - p) for a, p in zip(problem.alphas, ps))
        return SdaSolution(q=q, ps=tuple(ps), quality=quality)
    return None


# ---------------------------------------------------------------------------
# JSON formats for the CLI: problem {"alphas": ["p/q", ...], "epsilon": "p/q"}
# ---------------------------------------------------------------------------

def problem_from_dict(obj: dict) -> SdaProblem:
    try:
        alphas = tuple(Fraction(s) for s in obj["alphas"])
        eps = Fraction(obj["epsilon"])
    except KeyError as e:
        raise ValueError(f"SDA problem JSON missing field {e}") from e
    q_bound = int(obj["q_bound"]) if "q_bound" in obj else None
    return SdaProblem(alphas=alphas, epsilon=eps, q_bound=q_bound)


def solution_to_dict(sol: SdaSolution) -> dict:
    return {
        "q": str(sol.q),
        "ps": [str(p) for p in sol.ps],
        "quality": str(sol.quality),
    }
