"""Exact-rational lattice machinery: Gram-Schmidt, LLL reduction, determinants
and a brute-force short-vector oracle.

Everything here runs on fractions.Fraction; there is no floating point and
therefore no tolerance anywhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Sequence, Tuple

DEFAULT_DELTA = Fraction(3, 4)


def _frac_vec(row) -> tuple:
    return tuple(Fraction(x) for x in row)


def inner_product(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    if len(x) != len(y):
        raise ValueError("vector length mismatch")
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def norm_sq(y: Sequence[Fraction]) -> Fraction:
    if len(y) == 0:
        raise ValueError("empty vector")
    return inner_product(y, y)


def sup_norm(y: Sequence[Fraction]) -> Fraction:
    if len(y) == 0:
        raise ValueError("empty vector")
    return max(abs(Fraction(v)) for v in y)


@dataclass(frozen=True)
class LatticeBasis:
    rows: tuple  # tuple of tuples of Fraction

    def __post_init__(self):
        rows = tuple(_frac_vec(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) == 0:
            raise ValueError("empty basis")
        d = len(rows[0])
        if any(len(r) != d for r in rows):
            raise ValueError("ragged basis rows")
        if len(rows) > d:
            raise ValueError("more rows than ambient dimension")

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows[0])

    def is_square(self) -> bool:
        return self.m == self.dim


@dataclass(frozen=True)
class GramSchmidtData:
    ortho: tuple   # orthogonalized vectors f_i*
    mu: tuple      # full lower-triangular matrix, mu[i][j] for j < i
    norms: tuple   # F_i = <f_i*, f_i*>


def _gso(rows: List[List[Fraction]]):
    """Raw Gram-Schmidt; raises on linearly dependent rows."""
    n = len(rows)
    ortho: List[List[Fraction]] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms: List[Fraction] = []
    for i in range(n):
        v = list(rows[i])
        for j in range(i):
            mu[i][j] = inner_product(rows[i], ortho[j]) / norms[j]
            v = [a - mu[i][j] * b for a, b in zip(v, ortho[j])]
        nv = inner_product(v, v)
        if nv == 0:
            raise ValueError("rank-deficient basis: row %d is dependent" % i)
        ortho.append(v)
        norms.append(nv)
    return ortho, mu, norms


def gram_schmidt(basis: LatticeBasis) -> GramSchmidtData:
    ortho, mu, norms = _gso([list(r) for r in basis.rows])
    return GramSchmidtData(
        ortho=tuple(tuple(v) for v in ortho),
        mu=tuple(tuple(row) for row in mu),
        norms=tuple(norms),
    )


def is_lll_reduced(basis: LatticeBasis, delta: Fraction = DEFAULT_DELTA) -> bool:
    """Size condition |mu_ij| <= 1/2 plus the Lovasz condition, checked in
    exact rational arithmetic."""
    delta = Fraction(delta)
    _, mu, norms = _gso([list(r) for r in basis.rows])
    n = len(norms)
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for i in range(1, n):
        if norms[i] < (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            return False
    return True


def lll_reduce_with_stats(
    basis: LatticeBasis, delta: Fraction = DEFAULT_DELTA
) -> Tuple[LatticeBasis, int]:
    """LLL reduction with cached mu/F bookkeeping; returns (reduced, swap count).

    The swap updates follow the classical formulation: after the Lovasz test
    fails at k, the mu/F entries are patched in place instead of recomputing
    the whole orthogonalization.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    f = [list(r) for r in basis.rows]
    n = len(f)
    _, mu, F = _gso(f)
    half = Fraction(1, 2)

    def red(k: int, l: int) -> None:
        if abs(mu[k][l]) > half:
            r = math.floor(half + mu[k][l])  # round half up
            f[k] = [a - r * b for a, b in zip(f[k], f[l])]
            for j in range(l):
                mu[k][j] -= r * mu[l][j]
            mu[k][l] -= r

    swaps = 0
    k = 1
    while k < n:
        red(k, k - 1)
        if F[k] < (delta - mu[k][k - 1] ** 2) * F[k - 1]:
            m_ = mu[k][k - 1]
            B = F[k] + m_ * m_ * F[k - 1]
            mu[k][k - 1] = m_ * F[k - 1] / B
            F[k] = F[k - 1] * F[k] / B
            F[k - 1] = B
            f[k], f[k - 1] = f[k - 1], f[k]
            for j in range(k - 1):
                mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
            for i in range(k + 1, n):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - m_ * t
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
            swaps += 1
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return LatticeBasis(tuple(tuple(row) for row in f)), swaps


def lll_reduce(basis: LatticeBasis, delta: Fraction = DEFAULT_DELTA) -> LatticeBasis:
    return lll_reduce_with_stats(basis, delta)[0]


def _det_square(rows: List[List[Fraction]]) -> Fraction:
    """Fraction Gaussian elimination with partial pivoting."""
    n = len(rows)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] * inv
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def lattice_determinant(basis: LatticeBasis) -> Fraction:
    """|det| of a square full-rank basis; equals the product of the
    Gram-Schmidt norms."""
    if not basis.is_square():
        raise ValueError("determinant requires a square basis")
    det = _det_square([list(r) for r in basis.rows])
    if det == 0:
        raise ValueError("rank-deficient basis")
    return abs(det)


def change_of_basis(original: LatticeBasis, reduced: LatticeBasis) -> tuple:
    """Solve X * original = reduced over the rationals (square bases only).

    Used by tests to confirm a reduction is a unimodular transform."""
    if not original.is_square() or original.m != reduced.m or original.dim != reduced.dim:
        raise ValueError("bases must be square and of matching shape")
    n = original.m
    # Gauss-Jordan inversion of the original row matrix
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(original.rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("rank-deficient basis")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    inv_rows = [row[n:] for row in a]
    out = []
    for row in reduced.rows:
        out.append(tuple(
            sum((row[k] * inv_rows[k][j] for k in range(n)), Fraction(0))
            for j in range(n)
        ))
    return tuple(out)


def enumerate_short_vectors(basis: LatticeBasis, coeff_bound: int):
    """All nonzero integer combinations with coefficients in
    [-coeff_bound, coeff_bound], sorted by squared norm. Testing oracle only."""
    if basis.m > 6:
        raise ValueError("enumeration limited to m <= 6")
    if not 1 <= coeff_bound <= 5:
        raise ValueError("coeff_bound must lie in [1, 5]")
    # plain-int fast path when every entry is integral (the common case)
    integral = all(x.denominator == 1 for row in basis.rows for x in row)
    rows = [[int(x) for x in row] for row in basis.rows] if integral \
        else [list(row) for row in basis.rows]
    out = []
    for coeffs in product(range(-coeff_bound, coeff_bound + 1), repeat=basis.m):
        if all(c == 0 for c in coeffs):
            continue
        v = tuple(
            sum(c * row[j] for c, row in zip(coeffs, rows))
            for j in range(basis.dim)
        )
        ns = sum(x * x for x in v)
        out.append((tuple(Fraction(x) for x in v), Fraction(ns)))
    out.sort(key=lambda t: (t[1], t[0]))
    return out


# ---------------------------------------------------------------------------
# JSON matrix format: {"rows": [["num/den", ...], ...]}
# ---------------------------------------------------------------------------

def matrix_to_dict(basis: LatticeBasis) -> dict:
    return {"rows": [[str(x) for x in row] for row in basis.rows]}


def matrix_from_dict(obj: dict) -> LatticeBasis:
    if "rows" not in obj:
        raise ValueError("matrix JSON missing 'rows'")
    return LatticeBasis(tuple(tuple(Fraction(s) for s in row) for row in obj["rows"]))
