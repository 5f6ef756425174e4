"""RSA accumulator over prime representatives.

State tracks the accumulated value A = g^(prod of members) mod N together
with the member set, so deletion recomputes from the retained members
rather than using a trapdoor. All operations are pure: they return new
states and never mutate their inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .primes import miller_rabin


@dataclass(frozen=True)
class AccumulatorState:
    modulus: int
    generator: int
    value: int
    members: frozenset[int]


@dataclass(frozen=True)
class Witness:
    """Accumulator over all members except one; W^r mod N recovers A."""

    element_prime: int
    value: int


def acc_init(modulus: int, generator: int) -> AccumulatorState:
    if modulus < 6:
        raise ValueError("modulus too small")
    if not 2 <= generator <= modulus - 1:
        raise ValueError("generator out of range")
    return AccumulatorState(modulus=modulus, generator=generator,
                            value=generator % modulus, members=frozenset())


def _require_prime(r: int) -> None:
    if r < 2 or not miller_rabin(r):
        raise ValueError(f"{r} is not prime")


def acc_add(state: AccumulatorState, r: int) -> AccumulatorState:
    _require_prime(r)
    if r in state.members:
        raise ValueError("already accumulated")
    return AccumulatorState(
        modulus=state.modulus,
        generator=state.generator,
        value=pow(state.value, r, state.modulus),
        members=state.members | {r},
    )


def acc_remove(state: AccumulatorState, r: int) -> AccumulatorState:
    if r not in state.members:
        raise ValueError("not accumulated")
    remaining = state.members - {r}
    exponent = math.prod(remaining) if remaining else 1
    return AccumulatorState(
        modulus=state.modulus,
        generator=state.generator,
        value=pow(state.generator, exponent, state.modulus),
        members=remaining,
    )


def acc_witness(state: AccumulatorState, r: int) -> Witness:
    if r not in state.members:
        raise ValueError("not accumulated")
    others = state.members - {r}
    exponent = math.prod(others) if others else 1
    return Witness(element_prime=r,
                   value=pow(state.generator, exponent, state.modulus))


def acc_verify(value_a: int, value_w: int, r: int, modulus: int) -> bool:
    """Single modular exponentiation: W^r mod N == A."""
    if not (1 <= value_a < modulus and 1 <= value_w < modulus):
        return False
    return pow(value_w, r, modulus) == value_a
