"""Key-recovery attack on the knapsack scheme using lattice reduction.

The multiplier disguise a_i = b_i * w mod p leaks through simultaneous
Diophantine approximation: short vectors of the lattice

    ( lam  a_2  a_3 ... a_l )
    (  0  -a_1   0  ...  0  )
    (  ...            -a_1  )

have first coordinate lam * k_1, and (U', p') = (k_1, a_1) is usually an
equivalent trapdoor: b'_i = a_i * k_1 mod a_1 is super-increasing and
decrypts any intercepted (C, D').

Note b'_1 = a_1 * k_1 mod a_1 = 0 always; the zero weight carries no
information in the modular subset sum, so its bit is fixed by re-encryption
validation instead.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from typing import List, Optional, Sequence

from .cryptosystem import Ciphertext, PublicKey, select_weights
from .knapsack import is_superincreasing, solve_superincreasing_unordered
from .lattice import LatticeBasis, lll_reduce_with_stats, norm_sq

DEFAULT_ELL_SWEEP = (4, 6, 8, 10, 12)
# lambda = 2**-(n - l + off); n - l balances the scaled first coordinate
# against the cancellation terms k_1*a_i - k_i*a_1
DEFAULT_LAMBDA_EXP_OFFSETS = tuple(range(-4, 7))


@dataclass(frozen=True)
class AttackConfig:
    ell_sweep: tuple = DEFAULT_ELL_SWEEP
    lambda_sweep: Optional[tuple] = None  # explicit lambda values, else derived
    lambda_exp_offsets: tuple = DEFAULT_LAMBDA_EXP_OFFSETS
    max_candidates: int = 200

    def __post_init__(self):
        if any(l < 2 for l in self.ell_sweep):
            raise ValueError("every l must be >= 2")
        if self.lambda_sweep is not None:
            lams = tuple(Fraction(x) for x in self.lambda_sweep)
            if any(lam <= 0 for lam in lams):
                raise ValueError("lambda values must be positive")
            object.__setattr__(self, "lambda_sweep", lams)
        if self.max_candidates < 1:
            raise ValueError("max_candidates must be >= 1")

    def lambdas_for(self, n: int, l: int) -> tuple:
        if self.lambda_sweep is not None:
            return self.lambda_sweep
        exps = sorted({max(1, n - l + off) for off in self.lambda_exp_offsets})
        return tuple(Fraction(1, 1 << e) for e in exps)


@dataclass(frozen=True)
class CandidateMultiplier:
    k1: int
    source_vector: tuple
    ks: tuple  # k_2 ... k_l

    def __post_init__(self):
        if self.k1 < 1:
            raise ValueError("k1 must be >= 1")


@dataclass(frozen=True)
class EquivalentKey:
    u_prime: int
    p_prime: int
    b_prime: tuple  # b'_1 may be 0 when p' divides a_1 * U' (always for p'=a_1)

    def __post_init__(self):
        object.__setattr__(self, "b_prime", tuple(int(x) for x in self.b_prime))
        if self.u_prime < 1 or self.p_prime < 2:
            raise ValueError("invalid equivalent key parameters")


@dataclass(frozen=True)
class AttackReport:
    success: bool
    equivalent_key: Optional[EquivalentKey]
    plaintext: Optional[bytes]
    candidates_tried: int
    config_used: AttackConfig
    validation: bool
    lll_swaps: int = 0

    def __post_init__(self):
        if self.success and not self.validation:
            raise ValueError("success requires re-encryption validation")


def build_attack_lattice(a: Sequence[int], lam: Fraction) -> LatticeBasis:
    """l x l basis over the first l public weights: row 0 = (lam, a_2..a_l),
    then -a_1 down the diagonal."""
    l = len(a)
    if l < 2:
        raise ValueError("need at least two public weights")
    if any(x < 1 for x in a):
        raise ValueError("public weights must be positive")
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    rows = [tuple([lam] + [Fraction(x) for x in a[1:]])]
    for i in range(1, l):
        row = [Fraction(0)] * l
        row[i] = Fraction(-a[0])
        rows.append(tuple(row))
    return LatticeBasis(tuple(rows))


def _candidates_from_basis(
    reduced: LatticeBasis, a: Sequence[int], lam: Fraction
) -> List[CandidateMultiplier]:
    """Extract (k1, k_2..k_l) from reduced rows with nonzero first coordinate,
    ordered by ascending source-vector norm then k1."""
    a1 = a[0]
    found = []
    for v in reduced.rows:
        if v[0] == 0:
            continue
        if v[0] < 0:
            v = tuple(-x for x in v)  # sign-normalize so k1 > 0
        k1f = v[0] / lam
        if k1f.denominator != 1:
            continue
        k1 = int(k1f)
        if k1 < 1:
            continue
        ks = []
        ok = True
        for i in range(1, len(a)):
            num = k1 * a[i] - v[i]
            ki = Fraction(num, a1)
            if ki.denominator != 1:
                ok = False
                break
            ks.append(int(ki))
        if not ok:
            continue
        found.append((norm_sq(v), k1, CandidateMultiplier(k1=k1, source_vector=v, ks=tuple(ks))))
    found.sort(key=lambda t: (t[0], t[1]))
    return [c for _, _, c in found]


def _candidate_stream(pk: PublicKey, config: AttackConfig):
    """Yield deduplicated candidates in deterministic sweep order, together
    with the cumulative LLL swap count."""
    n = pk.params.n
    seen = set()
    swaps_total = 0
    for l in config.ell_sweep:
        if l > n:
            continue
        a = pk.a[:l]
        for lam in config.lambdas_for(n, l):
            basis = build_attack_lattice(a, lam)
            reduced, swaps = lll_reduce_with_stats(basis)
            swaps_total += swaps
            for cand in _candidates_from_basis(reduced, a, lam):
                if cand.k1 in seen:
                    continue
                seen.add(cand.k1)
                yield cand, swaps_total
                if len(seen) >= config.max_candidates:
                    return


def recover_multiplier_candidates(pk: PublicKey, config: AttackConfig) -> List[CandidateMultiplier]:
    return [cand for cand, _ in _candidate_stream(pk, config)]


def derive_equivalent_key(pk: PublicKey, u_prime: int, p_prime: int) -> Optional[EquivalentKey]:
    """b'_i = a_i * U' mod p'; accepted iff super-increasing, allowing a single
    leading zero (forced whenever p' = a_1)."""
    if u_prime < 1 or p_prime < 2:
        raise ValueError("need U' >= 1 and p' >= 2")
    b_prime = tuple((ai * u_prime) % p_prime for ai in pk.a)
    body = b_prime[1:] if b_prime[0] == 0 else b_prime
    if len(body) == 0 or not is_superincreasing(body):
        return None
    return EquivalentKey(u_prime=u_prime, p_prime=p_prime, b_prime=b_prime)


def attack_decrypt(pk: PublicKey, eq: EquivalentKey, ct: Ciphertext) -> Optional[bytes]:
    """Decode (C, D') under the equivalent trapdoor; every block is validated
    by re-encryption against the true public weights, so a returned plaintext
    is never a false positive."""
    params = pk.params
    if ct.d_prime >= factorial(params.group_size):
        raise ValueError("d_prime out of range for these params")
    bu_prime = select_weights(eq.b_prime, ct.d_prime, params)
    au = select_weights(pk.a, ct.d_prime, params)
    zero_positions = [i for i, w in enumerate(bu_prime) if w == 0]
    if len(zero_positions) > 8:
        return None  # 2**z validation blow-up; not a plausible key anyway
    total = sum(bu_prime)
    max_offset = -(-total // eq.p_prime)  # ceil
    bits: List[int] = []
    from .cryptosystem import _bits_to_message  # shared bit packing

    for c in ct.blocks:
        c_prime = (c * eq.u_prime) % eq.p_prime
        solved = None
        for m in range(max_offset + 1):
            target = c_prime + m * eq.p_prime
            try:
                block_bits = solve_superincreasing_unordered(bu_prime, target, allow_zero=True)
            except ValueError:
                return None
            if block_bits is None:
                continue
            # zero-weight bits are free; pin them by re-encryption
            for assignment in product((0, 1), repeat=len(zero_positions)):
                trial = list(block_bits)
                for pos, bit in zip(zero_positions, assignment):
                    trial[pos] = bit
                if sum(w for w, x in zip(au, trial) if x) == c:
                    solved = trial
                    break
            if solved is not None:
                break
        if solved is None:
            return None
        bits.extend(solved)
    try:
        return _bits_to_message(bits, ct.msg_len_bytes)
    except ValueError:
        return None


def full_attack(pk: PublicKey, ct: Ciphertext, config: Optional[AttackConfig] = None) -> AttackReport:
    """Steps 1-3 end to end: sweep lattices for multiplier candidates, derive
    equivalent keys with p' = a_1, decrypt, stop at the first validated hit."""
    config = config or AttackConfig()
    a1 = pk.a[0]
    tried = 0
    swaps = 0
    for cand, swaps in _candidate_stream(pk, config):
        tried += 1
        eq = derive_equivalent_key(pk, cand.k1, a1)
        if eq is None:
            continue
        plaintext = attack_decrypt(pk, eq, ct)
        if plaintext is not None:
            return AttackReport(
                success=True, equivalent_key=eq, plaintext=plaintext,
                candidates_tried=tried, config_used=config, validation=True,
                lll_swaps=swaps,
            )
    return AttackReport(
        success=False, equivalent_key=None, plaintext=None,
        candidates_tried=tried, config_used=config, validation=False,
        lll_swaps=swaps,
    )


def report_to_dict(report: AttackReport) -> dict:
    return {
        "success": report.success,
        "candidates_tried": report.candidates_tried,
        "validation": report.validation,
        "lll_swaps": report.lll_swaps,
        "u_prime": str(report.equivalent_key.u_prime) if report.equivalent_key else None,
        "p_prime": str(report.equivalent_key.p_prime) if report.equivalent_key else None,
        "plaintext_hex": report.plaintext.hex() if report.plaintext is not None else None,
    }
