"""Deterministic cryptographic primitives for the settlement simulator."""

from .keccak import BACKEND, keccak256, keccak256_pure
from .merkle import MerkleProof, merkle_prove, merkle_root, merkle_verify
from .primes import hash_to_prime, miller_rabin
from .accumulator import (
    AccumulatorState,
    Witness,
    acc_add,
    acc_init,
    acc_remove,
    acc_verify,
    acc_witness,
)
from .signing import DEFAULT_SCHEME, Ed25519Scheme, KeyPair, SignatureBundle, sig_verify

__all__ = [
    "BACKEND",
    "keccak256",
    "keccak256_pure",
    "MerkleProof",
    "merkle_root",
    "merkle_prove",
    "merkle_verify",
    "hash_to_prime",
    "miller_rabin",
    "AccumulatorState",
    "Witness",
    "acc_init",
    "acc_add",
    "acc_remove",
    "acc_witness",
    "acc_verify",
    "DEFAULT_SCHEME",
    "Ed25519Scheme",
    "KeyPair",
    "SignatureBundle",
    "sig_verify",
]
