"""The attacked knapsack scheme: key generation, encryption, decryption.

Paper-scale (n=1360, 8 subsets of 170, take 128) and small desk-scale
instances share the same code path; everything is deterministic in the seed.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from math import factorial
from typing import List, Sequence, Tuple

import gmpy2

from .knapsack import (
    SuperIncreasingSequence,
    generate_superincreasing,
    is_superincreasing,
    solve_superincreasing_unordered,
)
from .permutation import factorial_carry, permute

DIGEST_BITS = 1024


class CorruptCiphertextError(ValueError):
    """A block failed to decode under the private key."""


class KeyIncompatibilityError(ValueError):
    """The selected private weights do not form a decodable set."""


@dataclass(frozen=True)
class SchemeParams:
    n: int = 1360
    subsets: int = 8
    group_size: int = 170
    take: int = 128
    slack_bits: int = 8
    hash_id: str = "sha256-ctr4"

    def __post_init__(self):
        if self.n != self.subsets * self.group_size:
            raise ValueError("n must equal subsets * group_size")
        if not 1 <= self.take <= self.group_size:
            raise ValueError("take must lie in [1, group_size]")
        if self.slack_bits < 0:
            raise ValueError("slack_bits must be >= 0")

    @property
    def block_bits(self) -> int:
        return self.subsets * self.take


def desk_params(n: int, slack_bits: int = 4, take: int | None = None) -> SchemeParams:
    """Small two-subset instance for experiments: groups of n/2, take g/2."""
    if n % 4 != 0:
        raise ValueError("desk params need n divisible by 4")
    g = n // 2
    return SchemeParams(n=n, subsets=2, group_size=g, take=take or g // 2,
                        slack_bits=slack_bits)


@dataclass(frozen=True)
class PrivateKey:
    b: SuperIncreasingSequence
    w: int
    w_inv: int
    p: int

    def __post_init__(self):
        if self.p <= self.b.total():
            raise ValueError("p must exceed the weight sum")
        if not 1 <= self.w < self.p:
            raise ValueError("w must lie in [1, p)")
        if (self.w * self.w_inv) % self.p != 1:
            raise ValueError("w_inv is not the inverse of w mod p")


@dataclass(frozen=True)
class PublicKey:
    a: tuple
    params: SchemeParams

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if len(self.a) != self.params.n:
            raise ValueError("public key length does not match params")


@dataclass(frozen=True)
class Ciphertext:
    blocks: tuple
    d_prime: int
    msg_len_bytes: int

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(int(c) for c in self.blocks))
        if self.d_prime < 0:
            raise ValueError("d_prime must be non-negative")
        if self.msg_len_bytes < 0:
            raise ValueError("msg_len_bytes must be non-negative")


def next_prime_above(lower: int) -> int:
    """Smallest probable prime > lower (64 Miller-Rabin rounds)."""
    c = lower + 1
    if c <= 2:
        return 2
    if c % 2 == 0:
        if c == 2:
            return 2
        c += 1
    while not gmpy2.is_prime(c, 64):
        c += 2
    return c


def keygen(params: SchemeParams, seed: int) -> Tuple[PublicKey, PrivateKey]:
    rng = random.Random(seed)
    b = generate_superincreasing(params.n, params.slack_bits, rng.getrandbits(64))
    p = next_prime_above(b.total())
    w = rng.randrange(2, p)
    w_inv = pow(w, -1, p)
    a = tuple((bi * w) % p for bi in b.weights)
    return (
        PublicKey(a=a, params=params),
        PrivateKey(b=b, w=w, w_inv=w_inv, p=p),
    )


def select_weights(vector: Sequence[int], d_prime: int, params: SchemeParams) -> List[int]:
    """Split into subsets of group_size, permute each by the Lehmer code of
    d_prime, keep the first `take` of each, concatenate."""
    if len(vector) != params.n:
        raise ValueError("vector length does not match params")
    g = params.group_size
    if d_prime >= factorial(g):
        raise ValueError("d_prime out of range: must be < group_size!")
    code = factorial_carry(d_prime, g)
    out: List[int] = []
    for k in range(params.subsets):
        group = list(vector[k * g:(k + 1) * g])
        out.extend(permute(group, code)[:params.take])
    return out


def digest_to_dprime(message: bytes, params: SchemeParams) -> int:
    """1024-bit digest of the message reduced mod group_size!.

    hash_id "sha256-ctr4": SHA-256 of message || 32-bit big-endian counter,
    counter = 0..3, concatenated and read big-endian."""
    if params.hash_id != "sha256-ctr4":
        raise ValueError(f"unknown hash_id {params.hash_id!r}")
    chunks = b"".join(
        hashlib.sha256(message + ctr.to_bytes(4, "big")).digest() for ctr in range(4)
    )
    digest = int.from_bytes(chunks, "big")
    assert digest.bit_length() <= DIGEST_BITS
    return digest % factorial(params.group_size)


def _message_to_bits(message: bytes, block_bits: int) -> List[int]:
    bits = []
    for byte in message:
        for j in range(7, -1, -1):
            bits.append((byte >> j) & 1)
    while len(bits) % block_bits != 0:
        bits.append(0)
    return bits


def _bits_to_message(bits: Sequence[int], msg_len_bytes: int) -> bytes:
    if msg_len_bytes * 8 > len(bits):
        raise CorruptCiphertextError("message length exceeds decoded bits")
    out = bytearray()
    for i in range(msg_len_bytes):
        byte = 0
        for j in range(8):
            byte = (byte << 1) | bits[i * 8 + j]
        out.append(byte)
    return bytes(out)


def encrypt(pk: PublicKey, message: bytes) -> Ciphertext:
    params = pk.params
    d_prime = digest_to_dprime(message, params)
    au = select_weights(pk.a, d_prime, params)
    bits = _message_to_bits(message, params.block_bits)
    blocks = []
    bb = params.block_bits
    for k in range(len(bits) // bb):
        chunk = bits[k * bb:(k + 1) * bb]
        blocks.append(sum(w for w, x in zip(au, chunk) if x))
    if not blocks:
        blocks = [0]  # empty message still produces one (empty) block
    return Ciphertext(blocks=tuple(blocks), d_prime=d_prime,
                      msg_len_bytes=len(message))


def decrypt(sk: PrivateKey, params: SchemeParams, ct: Ciphertext) -> bytes:
    """Per block: D_k = C_k * w' mod p, then greedy-decode over the selected
    private weights.

    The selected weights are a shuffled subset of the super-increasing b, so
    the greedy solve runs over the sorted order and maps bits back."""
    bu = select_weights(sk.b.weights, ct.d_prime, params)
    if not is_superincreasing(sorted(bu)):
        raise KeyIncompatibilityError("selected private weights are not decodable")
    bits: List[int] = []
    for c in ct.blocks:
        d_k = (c * sk.w_inv) % sk.p
        try:
            block_bits = solve_superincreasing_unordered(bu, d_k)
        except ValueError as e:
            raise KeyIncompatibilityError(str(e)) from e
        if block_bits is None:
            raise CorruptCiphertextError("block does not decode to a subset sum")
        bits.extend(block_bits)
    return _bits_to_message(bits, ct.msg_len_bytes)


def selection_is_superincreasing(sk: PrivateKey, d_prime: int, params: SchemeParams) -> bool:
    """Diagnostic: is the selected private vector super-increasing in the order
    the scheme produces it (the property the scheme's authors assume)?"""
    bu = select_weights(sk.b.weights, d_prime, params)
    return is_superincreasing(bu)


# ---------------------------------------------------------------------------
# JSON file formats; all big integers serialize as decimal strings.
# ---------------------------------------------------------------------------

def params_to_dict(params: SchemeParams) -> dict:
    return {
        "n": params.n,
        "subsets": params.subsets,
        "group_size": params.group_size,
        "take": params.take,
        "slack_bits": params.slack_bits,
        "hash_id": params.hash_id,
    }


def params_from_dict(obj: dict) -> SchemeParams:
    try:
        return SchemeParams(
            n=int(obj["n"]),
            subsets=int(obj["subsets"]),
            group_size=int(obj["group_size"]),
            take=int(obj["take"]),
            slack_bits=int(obj.get("slack_bits", 8)),
            hash_id=obj.get("hash_id", "sha256-ctr4"),
        )
    except KeyError as e:
        raise ValueError(f"params JSON missing field {e}") from e


def public_key_to_dict(pk: PublicKey) -> dict:
    return {"params": params_to_dict(pk.params), "a": [str(x) for x in pk.a]}


def public_key_from_dict(obj: dict) -> PublicKey:
    try:
        return PublicKey(
            a=tuple(int(s) for s in obj["a"]),
            params=params_from_dict(obj["params"]),
        )
    except KeyError as e:
        raise ValueError(f"public key JSON missing field {e}") from e


def private_key_to_dict(sk: PrivateKey, params: SchemeParams) -> dict:
    return {
        "params": params_to_dict(params),
        "b": [str(x) for x in sk.b.weights],
        "w": str(sk.w),
        "w_inv": str(sk.w_inv),
        "p": str(sk.p),
    }


def private_key_from_dict(obj: dict) -> Tuple[PrivateKey, SchemeParams]:
    try:
        sk = PrivateKey(
            b=SuperIncreasingSequence(tuple(int(s) for s in obj["b"])),
            w=int(obj["w"]),
            w_inv=int(obj["w_inv"]),
            p=int(obj["p"]),
        )
        params = params_from_dict(obj["params"])
    except KeyError as e:
        raise ValueError(f"private key JSON missing field {e}") from e
    return sk, params


def ciphertext_to_dict(ct: Ciphertext) -> dict:
    return {
        "blocks": [str(c) for c in ct.blocks],
        "d_prime": str(ct.d_prime),
        "msg_len_bytes": ct.msg_len_bytes,
    }


def ciphertext_from_dict(obj: dict) -> Ciphertext:
    try:
        return Ciphertext(
            blocks=tuple(int(s) for s in obj["blocks"]),
            d_prime=int(obj["d_prime"]),
            msg_len_bytes=int(obj["msg_len_bytes"]),
        )
    except KeyError as e:
        raise ValueError(f"ciphertext JSON missing field {e}") from e
