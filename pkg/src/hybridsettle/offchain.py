"""Off-chain settlement layer: canonical record encoding, digest and
batch construction, tamper injection, the append-only record store, and
the replayable auditor.

The audit rule is self-contained: anyone holding the record log and the
public on-chain commitments can recompute every digest and reach the
same verdicts without private state.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence, Union

from .crypto.keccak import keccak256
from .crypto.merkle import MerkleProof, merkle_prove, merkle_root, merkle_verify
from .crypto.accumulator import AccumulatorState, Witness, acc_witness
from .encoding import bytes_word, int_word, str_word

TX_TYPES = ("buy", "sell")
_TYPE_CODES = {"buy": 0, "sell": 1}

RECORD_FIELDS = ("timestamp", "participant_id", "tx_type", "energy_kwh",
                 "price_milli", "region")
RECORD_BYTES = 192  # six 32-byte words


@dataclass(frozen=True)
class SettlementRecord:
    """One off-chain energy settlement; field order is fixed."""

    timestamp: int
    participant_id: bytes
    tx_type: str
    energy_kwh: int
    price_milli: int
    region: str

    def __post_init__(self):
        if self.timestamp < 0:
            raise ValueError("timestamp must be >= 0")
        if len(self.participant_id) != 16:
            raise ValueError("participant_id must be 16 bytes")
        if self.tx_type not in _TYPE_CODES:
            raise ValueError(f"unknown tx_type: {self.tx_type}")
        if self.energy_kwh <= 0:
            raise ValueError("energy_kwh must be positive")
        if self.price_milli <= 0:
            raise ValueError("price_milli must be positive")
        if len(self.region.encode("utf-8")) > 16:
            raise ValueError("region longer than 16 bytes")


def encode_record(record: SettlementRecord) -> bytes:
    """Fixed six-word canonical encoding; injective over valid records."""
    return b"".join((
        int_word(record.timestamp),
        bytes_word(record.participant_id),
        int_word(_TYPE_CODES[record.tx_type]),
        int_word(record.energy_kwh),
        int_word(record.price_milli),
        str_word(record.region),
    ))


def decode_record(blob: bytes) -> SettlementRecord:
    """Inverse of encode_record; rejects anything non-canonical."""
    if len(blob) != RECORD_BYTES:
        raise ValueError(f"record encoding must be {RECORD_BYTES} bytes")
    words = [blob[32 * i:32 * (i + 1)] for i in range(6)]
    type_code = int.from_bytes(words[2], "big")
    if type_code not in (0, 1):
        raise ValueError("invalid tx_type word")
    record = SettlementRecord(
        timestamp=int.from_bytes(words[0], "big"),
        participant_id=words[1][:16],
        tx_type=TX_TYPES[type_code],
        energy_kwh=int.from_bytes(words[3], "big"),
        price_milli=int.from_bytes(words[4], "big"),
        region=words[5].rstrip(b"\x00").decode("utf-8"),
    )
    if encode_record(record) != blob:
        raise ValueError("non-canonical record encoding")
    return record


def build_digest(record: SettlementRecord) -> bytes:
    return keccak256(encode_record(record))


@dataclass(frozen=True)
class Batch:
    batch_id: bytes
    records: tuple[SettlementRecord, ...]
    leaves: tuple[bytes, ...]
    root: bytes

    def prove(self, index: int) -> MerkleProof:
        return merkle_prove(list(self.leaves), index)


def build_batch(records: Sequence[SettlementRecord],
                batch_id: Optional[bytes] = None) -> Batch:
    if not records:
        raise ValueError("empty batch")
    leaves = tuple(build_digest(r) for r in records)
    root = merkle_root(list(leaves))
    if batch_id is None:
        batch_id = keccak256(b"batch\x00" + root + len(leaves).to_bytes(8, "big"))
    return Batch(batch_id=batch_id, records=tuple(records), leaves=leaves, root=root)


def tamper(record: SettlementRecord, category: str, rng: random.Random,
           regions: Sequence[str] = ("north", "south", "east", "west"),
           clock_horizon: int = 86400) -> SettlementRecord:
    """Copy of the record with one field replaced by a different valid value."""
    if category == "timestamp":
        value = record.timestamp
        while value == record.timestamp:
            value = rng.randrange(0, clock_horizon)
        return replace(record, timestamp=value)
    if category == "participant_id":
        value = record.participant_id
        while value == record.participant_id:
            value = rng.getrandbits(128).to_bytes(16, "big")
        return replace(record, participant_id=value)
    if category == "tx_type":
        return replace(record, tx_type="sell" if record.tx_type == "buy" else "buy")
    if category == "energy_kwh":
        value = record.energy_kwh
        while value == record.energy_kwh:
            value = rng.randrange(1, max(2 * record.energy_kwh, 100))
        return replace(record, energy_kwh=value)
    if category == "price_milli":
        value = record.price_milli
        while value == record.price_milli:
            value = rng.randrange(1, max(2 * record.price_milli, 200))
        return replace(record, price_milli=value)
    if category == "region":
        pool = [r for r in regions if r != record.region]
        if not pool:
            pool = [record.region + "x"]
        return replace(record, region=pool[rng.randrange(len(pool))])
    raise ValueError(f"unknown field category: {category}")


# ---------------------------------------------------------------------------
# record-to-commitment mapping and replay audit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SingleAnchor:
    commitment_id: bytes


@dataclass(frozen=True)
class BatchAnchor:
    commitment_id: bytes
    leaf_index: int
    tree_size: int
    siblings: tuple[bytes, ...]


RecordAnchor = Union[SingleAnchor, BatchAnchor]


@dataclass(frozen=True)
class AuditMismatch:
    index: int
    stored: Optional[bytes]
    computed: bytes
    reason: str


@dataclass(frozen=True)
class AuditReport:
    total: int
    matched: int
    mismatched: tuple[AuditMismatch, ...]


def replay_audit(records: Sequence[SettlementRecord],
                 lookup: Callable[[bytes], Optional[object]],
                 mapping: Sequence[RecordAnchor]) -> AuditReport:
    """Recompute every digest and compare against on-chain commitments.

    `lookup` resolves a commitment id to the committed object (or None);
    the auditor consumes nothing else. Batch-mapped records are checked
    by Merkle inclusion against the committed root.
    """
    if len(records) != len(mapping):
        raise ValueError("every record needs a mapping entry")
    mismatched: list[AuditMismatch] = []
    for index, (record, anchor) in enumerate(zip(records, mapping)):
        computed = build_digest(record)
        commitment = lookup(anchor.commitment_id)
        if commitment is None:
            mismatched.append(AuditMismatch(index, None, computed, "absent anchor"))
            continue
        stored = commitment.value
        if isinstance(anchor, SingleAnchor):
            if computed != stored:
                mismatched.append(AuditMismatch(index, stored, computed, "digest mismatch"))
        else:
            proof = MerkleProof(leaf_index=anchor.leaf_index,
                                siblings=anchor.siblings,
                                tree_size=anchor.tree_size)
            if not merkle_verify(stored, computed, proof):
                mismatched.append(AuditMismatch(index, stored, computed, "inclusion failed"))
    return AuditReport(total=len(records),
                       matched=len(records) - len(mismatched),
                       mismatched=tuple(mismatched))


def write_audit_csv(path, report: AuditReport) -> None:
    verdicts = {m.index: m for m in report.mismatched}
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("index,verdict,stored,computed,reason\n")
        for index in range(report.total):
            m = verdicts.get(index)
            if m is None:
                fh.write(f"{index},match,,,\n")
            else:
                stored = m.stored.hex() if m.stored is not None else "absent"
                fh.write(f"{index},mismatch,{stored},{m.computed.hex()},{m.reason}\n")


# ---------------------------------------------------------------------------
# record store: hex log plus key=value manifest
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Manifest:
    seed: int
    config_digest: str
    count: int
    mapping: tuple[RecordAnchor, ...]


def write_record_log(path, records: Sequence[SettlementRecord]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(encode_record(record).hex() + "\n")


def read_record_log(path) -> list[SettlementRecord]:
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(decode_record(bytes.fromhex(line)))
    return records


def _anchor_to_text(anchor: RecordAnchor) -> str:
    if isinstance(anchor, SingleAnchor):
        return f"single:{anchor.commitment_id.hex()}"
    sibs = "".join(s.hex() for s in anchor.siblings)
    return (f"batch:{anchor.commitment_id.hex()}:{anchor.leaf_index}"
            f":{anchor.tree_size}:{sibs}")


def _anchor_from_text(text: str) -> RecordAnchor:
    parts = text.split(":")
    if parts[0] == "single":
        return SingleAnchor(commitment_id=bytes.fromhex(parts[1]))
    if parts[0] == "batch":
        raw = bytes.fromhex(parts[4]) if parts[4] else b""
        siblings = tuple(raw[i:i + 32] for i in range(0, len(raw), 32))
        return BatchAnchor(commitment_id=bytes.fromhex(parts[1]),
                           leaf_index=int(parts[2]),
                           tree_size=int(parts[3]),
                           siblings=siblings)
    raise ValueError(f"unknown anchor kind: {parts[0]}")


def write_manifest(path, manifest: Manifest) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"seed={manifest.seed}\n")
        fh.write(f"config_digest={manifest.config_digest}\n")
        fh.write(f"count={manifest.count}\n")
        for index, anchor in enumerate(manifest.mapping):
            fh.write(f"map.{index}={_anchor_to_text(anchor)}\n")


def read_manifest(path) -> Manifest:
    pairs: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and "=" in line:
                key, value = line.split("=", 1)
                pairs[key] = value
    count = int(pairs["count"])
    mapping = tuple(_anchor_from_text(pairs[f"map.{i}"]) for i in range(count))
    return Manifest(seed=int(pairs["seed"]),
                    config_digest=pairs["config_digest"],
                    count=count,
                    mapping=mapping)


# ---------------------------------------------------------------------------
# witness maintenance and attribute credentials
# ---------------------------------------------------------------------------

def maintain_witnesses(state: AccumulatorState) -> dict[int, Witness]:
    """Fresh membership witness for every member of the current set."""
    return {r: acc_witness(state, r) for r in sorted(state.members)}


def attribute_leaf(key: str, value: str, salt: bytes) -> bytes:
    """Blinded credential leaf; the salt stays with the holder."""
    if len(salt) != 16:
        raise ValueError("salt must be 16 bytes")
    return keccak256(key.encode("utf-8") + b"\x00" + value.encode("utf-8") + salt)
