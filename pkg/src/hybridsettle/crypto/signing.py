"""Pluggable signature verification behind a single opaque predicate.

The default scheme is Ed25519 (deterministic verify, 32-byte keys).
Contracts and the ledger only ever see `sig_verify(bundle) -> bool`.
"""

from __future__ import annotations

from dataclasses import dataclass

from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives.asymmetric.ed25519 import (
    Ed25519PrivateKey,
    Ed25519PublicKey,
)


@dataclass(frozen=True)
class SignatureBundle:
    public_key: bytes
    message: bytes
    signature: bytes


@dataclass(frozen=True)
class KeyPair:
    signing_key: bytes
    public_key: bytes


class Ed25519Scheme:
    """Default scheme; key generation is deterministic in the seed."""

    name = "ed25519"

    def keygen(self, seed: bytes) -> KeyPair:
        if len(seed) != 32:
            raise ValueError("seed must be 32 bytes")
        priv = Ed25519PrivateKey.from_private_bytes(seed)
        pub = priv.public_key().public_bytes_raw()
        return KeyPair(signing_key=seed, public_key=pub)

    def sign(self, signing_key: bytes, message: bytes) -> bytes:
        return Ed25519PrivateKey.from_private_bytes(signing_key).sign(message)

    def verify(self, bundle: SignatureBundle) -> bool:
        try:
            pub = Ed25519PublicKey.from_public_bytes(bytes(bundle.public_key))
            pub.verify(bytes(bundle.signature), bytes(bundle.message))
            return True
        except (InvalidSignature, ValueError, TypeError):
            return False


DEFAULT_SCHEME = Ed25519Scheme()


def sig_verify(bundle: SignatureBundle, scheme=None) -> bool:
    """Opaque deterministic verification predicate; malformed input is False."""
    return (scheme or DEFAULT_SCHEME).verify(bundle)
