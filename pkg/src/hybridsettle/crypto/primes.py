"""Deterministic primality testing and hash-to-prime mapping."""

from __future__ import annotations

from .keccak import keccak256

# first 64 primes: a fixed Miller-Rabin witness schedule (64 rounds)
_MR_WITNESSES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
    59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131,
    137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223,
    227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311,
)


def miller_rabin(n: int, witnesses: tuple[int, ...] = _MR_WITNESSES) -> bool:
    """Deterministic Miller-Rabin over a fixed witness schedule."""
    if n < 2:
        return False
    for p in witnesses:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def hash_to_prime(data: bytes) -> int:
    """Deterministically map bytes to a prime of roughly 128 bits.

    The candidate is the low 128 bits of keccak256(data) forced odd;
    the scan walks upward in steps of two until the witness schedule
    accepts. Result is always >= 3.
    """
    candidate = int.from_bytes(keccak256(data)[16:], "big") | 1
    if candidate < 3:
        candidate = 3
    while not miller_rabin(candidate):
        candidate += 2
    return candidate
