"""Canonical binary Merkle trees over 32-byte digests.

Positional pairing with parent = keccak256(left || right). An unpaired
last node at any level is promoted unchanged to the next level, so a
proof carries at most ceil(log2(n)) siblings and possibly fewer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .keccak import keccak256


@dataclass(frozen=True)
class MerkleProof:
    """Bottom-up sibling path for one leaf position."""

    leaf_index: int
    siblings: tuple[bytes, ...]
    tree_size: int


def _levels(leaves: list[bytes]) -> list[list[bytes]]:
    levels = [list(leaves)]
    while len(levels[-1]) > 1:
        cur = levels[-1]
        nxt = []
        for i in range(0, len(cur) - 1, 2):
            nxt.append(keccak256(cur[i] + cur[i + 1]))
        if len(cur) % 2:
            nxt.append(cur[-1])
        levels.append(nxt)
    return levels


def _check_leaves(leaves) -> list[bytes]:
    if not leaves:
        raise ValueError("empty batch")
    out = []
    for leaf in leaves:
        if not isinstance(leaf, (bytes, bytearray)) or len(leaf) != 32:
            raise ValueError("leaf is not a 32-byte digest")
        out.append(bytes(leaf))
    return out


def merkle_root(leaves) -> bytes:
    """Root digest of a non-empty leaf list; a single leaf is its own root."""
    return _levels(_check_leaves(leaves))[-1][0]


def merkle_prove(leaves, index: int) -> MerkleProof:
    checked = _check_leaves(leaves)
    if not 0 <= index < len(checked):
        raise ValueError(f"leaf index {index} out of range for {len(checked)} leaves")
    siblings = []
    i = index
    for level in _levels(checked)[:-1]:
        width = len(level)
        if i % 2 == 1:
            siblings.append(level[i - 1])
        elif i + 1 < width:
            siblings.append(level[i + 1])
        # else: unpaired node, promoted without a sibling
        i //= 2
    return MerkleProof(leaf_index=index, siblings=tuple(siblings), tree_size=len(checked))


def merkle_verify(root: bytes, leaf: bytes, proof: MerkleProof,
                  hash_fn: Callable[[bytes], bytes] = keccak256) -> bool:
    """True iff folding leaf through the proof reproduces root.

    Malformed proofs return False rather than raising. `hash_fn` lets a
    metered execution environment charge for each combine.
    """
    if not isinstance(root, (bytes, bytearray)) or len(root) != 32:
        return False
    if not isinstance(leaf, (bytes, bytearray)) or len(leaf) != 32:
        return False
    if proof.tree_size < 1 or not 0 <= proof.leaf_index < proof.tree_size:
        return False
    for sib in proof.siblings:
        if not isinstance(sib, (bytes, bytearray)) or len(sib) != 32:
            return False
    cur = bytes(leaf)
    i = proof.leaf_index
    width = proof.tree_size
    pos = 0
    while width > 1:
        if i % 2 == 1:
            if pos >= len(proof.siblings):
                return False
            cur = hash_fn(proof.siblings[pos] + cur)
            pos += 1
        elif i + 1 < width:
            if pos >= len(proof.siblings):
                return False
            cur = hash_fn(cur + proof.siblings[pos])
            pos += 1
        i //= 2
        width = (width + 1) // 2
    if pos != len(proof.siblings):
        return False
    return cur == bytes(root)
