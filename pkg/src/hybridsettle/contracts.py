"""The six on-chain contract state machines.

Each contract owns a 32-byte key/value store inside the ledger and is
invoked only through `Ledger.execute_tx`, so every state change is
metered, atomic, and event-logged. Slot addresses are derived from
tagged keccak hashes; address derivation itself is not metered.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .crypto.keccak import keccak256
from .crypto.merkle import MerkleProof, merkle_verify
from .crypto.signing import SignatureBundle
from .encoding import encode_calldata, int_word, pack_fields, str_word, unpack_fields
from .ledger import Ledger, TxContext

BIGINT_WIDTH = 256  # on-chain big integers occupy eight 32-byte slots
_BIG_SLOTS = BIGINT_WIDTH // 32

KIND_SINGLE = "single"
KIND_BATCH = "batch"
_KIND_CODES = {KIND_SINGLE: 1, KIND_BATCH: 2}
_KIND_NAMES = {code: kind for kind, code in _KIND_CODES.items()}

SIDE_BUY = "buy"
SIDE_SELL = "sell"
_SIDE_CODES = {SIDE_BUY: 0, SIDE_SELL: 1}

ORDER_OPEN = 0
ORDER_SETTLED = 1


def _slot(tag: str, *parts) -> bytes:
    return keccak256(encode_calldata((tag,) + parts))


def _account_tag(account: str) -> bytes:
    return keccak256(account.encode("utf-8"))


class Contract:
    name = "contract"

    def __init__(self):
        self.ledger: Optional[Ledger] = None

    def attach(self, ledger: Ledger) -> None:
        self.ledger = ledger

    def _view(self, key: bytes, contract: Optional[str] = None) -> Optional[bytes]:
        """Free read for auditors and tests; never use inside an op."""
        return self.ledger.state.stores.get(contract or self.name, {}).get(key)


# ---------------------------------------------------------------------------
# OnOffChainVerifier
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Commitment:
    commitment_id: bytes
    kind: str
    value: bytes
    declared_count: int
    committer_tag: bytes
    clock: int


class VerifierContract(Contract):
    """Write-once anchor store for settlement digests and batch roots."""

    name = "verifier"

    @staticmethod
    def value_slot(commitment_id: bytes) -> bytes:
        return _slot("commit.value", commitment_id)

    @staticmethod
    def meta_slot(commitment_id: bytes) -> bytes:
        return _slot("commit.meta", commitment_id)

    @staticmethod
    def confirm_slot(commitment_id: bytes, leaf_index: int) -> bytes:
        return _slot("commit.confirmed", commitment_id, leaf_index)

    def _store_commitment(self, ctx: TxContext, commitment_id: bytes, kind: str,
                          value: bytes, count: int) -> None:
        code = _KIND_CODES[kind]
        meta = bytes([code]) + count.to_bytes(8, "big") + ctx.clock.to_bytes(8, "big") \
            + _account_tag(ctx.caller)[:8]
        ctx.sstore(self.value_slot(commitment_id), value)
        ctx.sstore(self.meta_slot(commitment_id), meta + b"\x00" * (32 - len(meta)))
        ctx.emit("Commit", commitment_id + bytes([code]) + value + count.to_bytes(8, "big"))

    def op_commit(self, ctx: TxContext, commitment_id: bytes, kind: str,
                  value: bytes, declared_count: int) -> None:
        ctx.require_registered(ctx.caller)
        ctx.require(len(commitment_id) == 32 and len(value) == 32, "invalid commitment")
        ctx.require(kind in _KIND_CODES, "invalid kind")
        if kind == KIND_SINGLE:
            ctx.require(declared_count == 1, "invalid count")
        else:
            ctx.require(declared_count >= 1, "invalid count")
        ctx.require(ctx.sload(self.meta_slot(commitment_id)) is None, "commitment exists")
        self._store_commitment(ctx, commitment_id, kind, value, declared_count)

    def op_commit_full(self, ctx: TxContext, commitment_id: bytes, records_blob: bytes) -> None:
        """Baseline submission: full records in calldata, fields stored
        per record, digests and the batch root derived on-chain."""
        ctx.require_registered(ctx.caller)
        ctx.require(len(commitment_id) == 32, "invalid commitment")
        ctx.require(len(records_blob) >= 192 and len(records_blob) % 192 == 0,
                    "invalid records")
        ctx.require(ctx.sload(self.meta_slot(commitment_id)) is None, "commitment exists")
        count = len(records_blob) // 192
        leaves = []
        for i in range(count):
            word = records_blob[192 * i:192 * (i + 1)]
            leaves.append(ctx.keccak(word))
            # packed field storage: two slots per record
            ts = word[24:32]
            participant = word[32:48]
            tx_type = word[95:96]
            energy = word[120:128]
            price = word[152:160]
            region = word[160:176]
            ctx.sstore(_slot("record.a", commitment_id, i), participant + ts + energy)
            ctx.sstore(_slot("record.b", commitment_id, i),
                       price + tx_type + region + b"\x00" * 7)
        while len(leaves) > 1:
            nxt = []
            for i in range(0, len(leaves) - 1, 2):
                nxt.append(ctx.keccak(leaves[i] + leaves[i + 1]))
            if len(leaves) % 2:
                nxt.append(leaves[-1])
            leaves = nxt
        self._store_commitment(ctx, commitment_id, KIND_BATCH, leaves[0], count)

    def op_confirm_inclusion(self, ctx: TxContext, commitment_id: bytes, leaf: bytes,
                             leaf_index: int, tree_size: int, siblings_blob: bytes) -> None:
        """Shared verification path: fold the leaf against the committed
        root and mark the position consumed."""
        ctx.require_registered(ctx.caller)
        ctx.require(len(leaf) == 32 and len(siblings_blob) % 32 == 0, "bad proof")
        value = ctx.sload(self.value_slot(commitment_id))
        meta = ctx.sload(self.meta_slot(commitment_id))
        ctx.require(value is not None and meta is not None, "no anchor")
        declared = int.from_bytes(meta[1:9], "big")
        ctx.require(tree_size == declared, "size mismatch")
        siblings = tuple(siblings_blob[i:i + 32] for i in range(0, len(siblings_blob), 32))
        proof = MerkleProof(leaf_index=leaf_index, siblings=siblings, tree_size=tree_size)
        ctx.require(merkle_verify(value, leaf, proof, hash_fn=ctx.keccak),
                    "inclusion mismatch")
        marker = self.confirm_slot(commitment_id, leaf_index)
        ctx.require(ctx.sload(marker) is None, "already confirmed")
        ctx.sstore(marker, int_word(1))
        ctx.emit("Confirmed", commitment_id + leaf + leaf_index.to_bytes(8, "big"))

    def op_get(self, ctx: TxContext, commitment_id: bytes) -> Optional[Commitment]:
        value = ctx.sload(self.value_slot(commitment_id))
        meta = ctx.sload(self.meta_slot(commitment_id))
        if value is None or meta is None:
            return None
        return self._decode(commitment_id, value, meta)

    @staticmethod
    def _decode(commitment_id: bytes, value: bytes, meta: bytes) -> Commitment:
        return Commitment(
            commitment_id=commitment_id,
            kind=_KIND_NAMES[meta[0]],
            value=value,
            declared_count=int.from_bytes(meta[1:9], "big"),
            committer_tag=meta[17:25],
            clock=int.from_bytes(meta[9:17], "big"),
        )

    def view_get(self, commitment_id: bytes) -> Optional[Commitment]:
        value = self._view(self.value_slot(commitment_id))
        meta = self._view(self.meta_slot(commitment_id))
        if value is None or meta is None:
            return None
        return self._decode(commitment_id, value, meta)


# ---------------------------------------------------------------------------
# EnergyTrading
# ---------------------------------------------------------------------------

class TradingContract(Contract):
    """Minimal order tuples; settlement links orders to an anchored
    commitment without storing any detail fields."""

    name = "trading"

    @staticmethod
    def data_slot(order_id: bytes) -> bytes:
        return _slot("order.data", order_id)

    @staticmethod
    def owner_slot(order_id: bytes) -> bytes:
        return _slot("order.owner", order_id)

    def op_place_order(self, ctx: TxContext, order_id: bytes, side: str,
                       quantity: int, price: int, region: str) -> None:
        ctx.require_role(ctx.caller, "prosumer")
        ctx.require(len(order_id) == 32, "invalid order")
        ctx.require(side in _SIDE_CODES, "invalid order")
        ctx.require(quantity > 0 and price > 0, "invalid order")
        ctx.require(len(region.encode("utf-8")) <= 16, "invalid order")
        ctx.require(ctx.sload(self.data_slot(order_id)) is None, "order exists")
        packed = pack_fields((_SIDE_CODES[side], 1), (ORDER_OPEN, 1),
                             (quantity, 8), (price, 8)) [:18] \
            + keccak256(region.encode("utf-8"))[:8] + b"\x00" * 6
        ctx.sstore(self.data_slot(order_id), packed)
        ctx.sstore(self.owner_slot(order_id), _account_tag(ctx.caller))
        ctx.emit("OrderPlaced", order_id + packed)

    def _load_order(self, ctx: TxContext, order_id: bytes):
        packed = ctx.sload(self.data_slot(order_id))
        if packed is None:
            return None
        side, status, quantity, price = unpack_fields(packed, 1, 1, 8, 8)
        return side, status, quantity, price, packed[18:26]

    def op_settle(self, ctx: TxContext, buy_order_id: bytes, sell_order_id: bytes,
                  settlement_commitment_id: bytes) -> None:
        ctx.require_registered(ctx.caller)
        buy = self._load_order(ctx, buy_order_id)
        sell = self._load_order(ctx, sell_order_id)
        ctx.require(buy is not None and sell is not None, "no match")
        ctx.require(buy[1] == ORDER_OPEN and sell[1] == ORDER_OPEN, "order closed")
        ctx.require(buy[0] == _SIDE_CODES[SIDE_BUY] and sell[0] == _SIDE_CODES[SIDE_SELL],
                    "no match")
        ctx.require(buy[4] == sell[4], "no match")       # region tag
        ctx.require(buy[2] == sell[2], "no match")       # exact quantity match
        anchor = ctx.sload(VerifierContract.value_slot(settlement_commitment_id),
                           contract=VerifierContract.name)
        ctx.require(anchor is not None, "no anchor")
        for order_id, order in ((buy_order_id, buy), (sell_order_id, sell)):
            side, _, quantity, price, region_tag = order
            packed = pack_fields((side, 1), (ORDER_SETTLED, 1),
                                 (quantity, 8), (price, 8))[:18] + region_tag + b"\x00" * 6
            ctx.sstore(self.data_slot(order_id), packed)
        ctx.emit("Settled", buy_order_id + sell_order_id + settlement_commitment_id)

    def view_status(self, order_id: bytes) -> Optional[int]:
        packed = self._view(self.data_slot(order_id))
        return None if packed is None else packed[1]


# ---------------------------------------------------------------------------
# CarbonAssetRegistry
# ---------------------------------------------------------------------------

class CarbonContract(Contract):
    """Lifecycle ledger for carbon credits.

    A registered asset is a lineage: per-holder entries carry
    (available, retired) and the registered total bounds the lineage sum.
    Transfers split the lineage; retirement only ever grows."""

    name = "carbon"

    @staticmethod
    def meta_slot(asset_id: bytes) -> bytes:
        return _slot("asset.meta", asset_id)

    @staticmethod
    def entry_slot(asset_id: bytes, holder: str) -> bytes:
        return _slot("asset.entry", asset_id, holder)

    @staticmethod
    def holders_count_slot(asset_id: bytes) -> bytes:
        return _slot("asset.holders.count", asset_id)

    @staticmethod
    def holder_slot(asset_id: bytes, index: int) -> bytes:
        return _slot("asset.holders", asset_id, index)

    def op_register(self, ctx: TxContext, asset_id: bytes, asset_type: str,
                    total: int, issuance_year: int, owner: str) -> None:
        ctx.require_role(ctx.caller, "authority")
        ctx.require(len(asset_id) == 32, "invalid asset")
        ctx.require(total > 0, "invalid total")
        ctx.require(0 <= issuance_year < 65536, "invalid year")
        ctx.require(len(owner.encode("utf-8")) <= 32, "invalid owner")
        ctx.require(ctx.sload(self.meta_slot(asset_id)) is None, "asset exists")
        meta = total.to_bytes(8, "big") + issuance_year.to_bytes(2, "big") \
            + keccak256(asset_type.encode("utf-8"))[:8] + _account_tag(ctx.caller)[:8]
        ctx.sstore(self.meta_slot(asset_id), meta + b"\x00" * (32 - len(meta)))
        ctx.sstore(self.entry_slot(asset_id, owner),
                   pack_fields((total, 8), (0, 8)))
        ctx.sstore(self.holders_count_slot(asset_id), int_word(1))
        ctx.sstore(self.holder_slot(asset_id, 0), str_word(owner))
        ctx.emit("AssetRegistered",
                 asset_id + total.to_bytes(8, "big") + str_word(owner))

    def _entry(self, ctx: TxContext, asset_id: bytes, holder: str):
        packed = ctx.sload(self.entry_slot(asset_id, holder))
        if packed is None:
            return None
        return unpack_fields(packed, 8, 8)

    def _write_entry(self, ctx: TxContext, asset_id: bytes, holder: str,
                     available: int, retired: int) -> None:
        ctx.sstore(self.entry_slot(asset_id, holder),
                   pack_fields((available, 8), (retired, 8)))

    def _append_holder(self, ctx: TxContext, asset_id: bytes, holder: str) -> None:
        count_word = ctx.sload(self.holders_count_slot(asset_id))
        count = int.from_bytes(count_word, "big")
        ctx.sstore(self.holder_slot(asset_id, count), str_word(holder))
        ctx.sstore(self.holders_count_slot(asset_id), int_word(count + 1))

    def op_transfer(self, ctx: TxContext, asset_id: bytes, to: str, amount: int) -> None:
        ctx.require(ctx.sload(self.meta_slot(asset_id)) is not None, "unknown asset")
        ctx.require(amount > 0, "invalid amount")
        ctx.require(len(to.encode("utf-8")) <= 32, "invalid holder")
        source = self._entry(ctx, asset_id, ctx.caller)
        ctx.require(source is not None, "unauthorized")
        available, retired = source
        ctx.require(amount <= available, "exceeds available")
        self._write_entry(ctx, asset_id, ctx.caller, available - amount, retired)
        dest = self._entry(ctx, asset_id, to)
        if dest is None:
            self._write_entry(ctx, asset_id, to, amount, 0)
            self._append_holder(ctx, asset_id, to)
        else:
            self._write_entry(ctx, asset_id, to, dest[0] + amount, dest[1])
        ctx.emit("Transferred",
                 asset_id + _account_tag(ctx.caller)[:8] + str_word(to)
                 + amount.to_bytes(8, "big"))

    def op_retire(self, ctx: TxContext, asset_id: bytes, amount: int) -> None:
        ctx.require(ctx.sload(self.meta_slot(asset_id)) is not None, "unknown asset")
        ctx.require(amount > 0, "invalid amount")
        entry = self._entry(ctx, asset_id, ctx.caller)
        ctx.require(entry is not None, "unauthorized")
        available, retired = entry
        ctx.require(amount <= available, "exceeds available")
        self._write_entry(ctx, asset_id, ctx.caller, available - amount, retired + amount)
        ctx.emit("Retired",
                 asset_id + _account_tag(ctx.caller)[:8] + amount.to_bytes(8, "big"))

    # -- audit views ------------------------------------------------------
    def view_total(self, asset_id: bytes) -> Optional[int]:
        meta = self._view(self.meta_slot(asset_id))
        return None if meta is None else int.from_bytes(meta[:8], "big")

    def view_entries(self, asset_id: bytes) -> list[tuple[str, int, int]]:
        count_word = self._view(self.holders_count_slot(asset_id))
        if count_word is None:
            return []
        entries = []
        for i in range(int.from_bytes(count_word, "big")):
            holder = self._view(self.holder_slot(asset_id, i)).rstrip(b"\x00").decode("utf-8")
            packed = self._view(self.entry_slot(asset_id, holder))
            available, retired = unpack_fields(packed, 8, 8)
            entries.append((holder, available, retired))
        return entries

    def view_lineage(self, asset_id: bytes) -> Optional[tuple[int, int, int]]:
        total = self.view_total(asset_id)
        if total is None:
            return None
        entries = self.view_entries(asset_id)
        return total, sum(e[1] for e in entries), sum(e[2] for e in entries)


# ---------------------------------------------------------------------------
# AccumulatorVerifier
# ---------------------------------------------------------------------------

class AccumulatorVerifierContract(Contract):
    """Constant-cost membership verification: one fixed-size modular
    exponentiation against the stored accumulator value."""

    name = "accver"

    @staticmethod
    def big_slot(tag: str, index: int) -> bytes:
        return _slot(f"acc.{tag}", index)

    def _store_big(self, ctx: TxContext, tag: str, raw: bytes) -> None:
        for i in range(_BIG_SLOTS):
            ctx.sstore(self.big_slot(tag, i), raw[32 * i:32 * (i + 1)])

    def _load_big(self, ctx: TxContext, tag: str) -> Optional[int]:
        chunks = []
        for i in range(_BIG_SLOTS):
            chunk = ctx.sload(self.big_slot(tag, i))
            if chunk is None:
                return None
            chunks.append(chunk)
        return int.from_bytes(b"".join(chunks), "big")

    def op_set_state(self, ctx: TxContext, value_a: bytes, modulus: bytes,
                     generator: bytes) -> None:
        ctx.require_role(ctx.caller, "governance")
        ctx.require(len(value_a) == BIGINT_WIDTH and len(modulus) == BIGINT_WIDTH
                    and len(generator) == BIGINT_WIDTH, "invalid width")
        ctx.require(int.from_bytes(modulus, "big") > 1, "invalid modulus")
        self._store_big(ctx, "value", value_a)
        self._store_big(ctx, "modulus", modulus)
        self._store_big(ctx, "generator", generator)
        ctx.emit("AccumulatorSet", keccak256(value_a) + keccak256(modulus))

    def op_verify_membership(self, ctx: TxContext, witness: bytes, prime: bytes) -> bool:
        ctx.require(len(witness) == BIGINT_WIDTH and len(prime) == 32, "invalid width")
        value_a = self._load_big(ctx, "value")
        modulus = self._load_big(ctx, "modulus")
        ctx.require(value_a is not None and modulus is not None, "no accumulator")
        w = int.from_bytes(witness, "big")
        r = int.from_bytes(prime, "big")
        ctx.require(1 <= w < modulus, "invalid witness")
        ctx.require(r >= 2, "invalid prime")
        result = ctx.modexp(w, r, modulus) == value_a
        ctx.emit("MembershipChecked", prime + (b"\x01" if result else b"\x00"))
        return result

    def view_state(self) -> Optional[tuple[int, int, int]]:
        vals = []
        for tag in ("value", "modulus", "generator"):
            chunks = []
            for i in range(_BIG_SLOTS):
                chunk = self._view(self.big_slot(tag, i))
                if chunk is None:
                    return None
                chunks.append(chunk)
            vals.append(int.from_bytes(b"".join(chunks), "big"))
        return tuple(vals)


# ---------------------------------------------------------------------------
# DIDRegistry
# ---------------------------------------------------------------------------

def rotate_message(did: str, new_key: bytes) -> bytes:
    return b"did-rotate\x00" + did.encode("utf-8") + b"\x00" + new_key


def auth_message(did: str, bucket: int) -> bytes:
    return b"did-auth\x00" + did.encode("utf-8") + b"\x00" + bucket.to_bytes(8, "big")


class DidContract(Contract):
    """Identity binding with rotation history and replay-safe
    bucket-stamped authentication."""

    name = "did"

    def __init__(self, bucket_seconds: int = 60):
        super().__init__()
        self.bucket_seconds = bucket_seconds

    @staticmethod
    def key_slot(did: str) -> bytes:
        return _slot("did.key", did)

    @staticmethod
    def controller_slot(did: str) -> bytes:
        return _slot("did.controller", did)

    @staticmethod
    def last_auth_slot(did: str) -> bytes:
        return _slot("did.lastauth", did)

    @staticmethod
    def history_count_slot(did: str) -> bytes:
        return _slot("did.history.count", did)

    @staticmethod
    def history_key_slot(did: str, index: int) -> bytes:
        return _slot("did.history.key", did, index)

    @staticmethod
    def history_clock_slot(did: str, index: int) -> bytes:
        return _slot("did.history.clock", did, index)

    @staticmethod
    def bucket_slot(did: str, bucket: int) -> bytes:
        return _slot("did.bucket", did, bucket)

    def op_register(self, ctx: TxContext, did: str, public_key: bytes) -> None:
        ctx.require_registered(ctx.caller)
        ctx.require(len(public_key) == 32, "invalid key")
        ctx.require(ctx.sload(self.key_slot(did)) is None, "did exists")
        ctx.sstore(self.key_slot(did), public_key)
        ctx.sstore(self.controller_slot(did), _account_tag(ctx.caller))
        ctx.sstore(self.history_count_slot(did), int_word(1))
        ctx.sstore(self.history_key_slot(did, 0), public_key)
        ctx.sstore(self.history_clock_slot(did, 0), int_word(ctx.clock))
        ctx.emit("DidRegistered", keccak256(did.encode("utf-8")) + public_key)

    def op_rotate(self, ctx: TxContext, did: str, new_key: bytes, signature: bytes) -> None:
        ctx.require(len(new_key) == 32, "invalid key")
        active = ctx.sload(self.key_slot(did))
        ctx.require(active is not None, "unknown did")
        bundle = SignatureBundle(public_key=active,
                                 message=rotate_message(did, new_key),
                                 signature=signature)
        ctx.require(ctx.verify_signature(bundle), "bad rotation")
        count = int.from_bytes(ctx.sload(self.history_count_slot(did)), "big")
        ctx.sstore(self.key_slot(did), new_key)
        ctx.sstore(self.history_count_slot(did), int_word(count + 1))
        ctx.sstore(self.history_key_slot(did, count), new_key)
        ctx.sstore(self.history_clock_slot(did, count), int_word(ctx.clock))
        ctx.emit("KeyRotated", keccak256(did.encode("utf-8")) + new_key)

    def op_authenticate(self, ctx: TxContext, did: str, signature: bytes) -> None:
        active = ctx.sload(self.key_slot(did))
        ctx.require(active is not None, "unknown did")
        bucket = ctx.clock // self.bucket_seconds
        ctx.require(ctx.sload(self.bucket_slot(did, bucket)) is None, "auth replay")
        bundle = SignatureBundle(public_key=active,
                                 message=auth_message(did, bucket),
                                 signature=signature)
        ctx.require(ctx.verify_signature(bundle), "auth failed")
        ctx.sstore(self.last_auth_slot(did), int_word(ctx.clock))
        ctx.sstore(self.bucket_slot(did, bucket), int_word(1))
        ctx.emit("Authenticated",
                 keccak256(did.encode("utf-8")) + bucket.to_bytes(8, "big"))

    def view_active_key(self, did: str) -> Optional[bytes]:
        return self._view(self.key_slot(did))

    def view_last_auth(self, did: str) -> Optional[int]:
        word = self._view(self.last_auth_slot(did))
        return None if word is None else int.from_bytes(word, "big")

    def view_history(self, did: str) -> list[tuple[bytes, int]]:
        count_word = self._view(self.history_count_slot(did))
        if count_word is None:
            return []
        out = []
        for i in range(int.from_bytes(count_word, "big")):
            key = self._view(self.history_key_slot(did, i))
            clk = int.from_bytes(self._view(self.history_clock_slot(did, i)), "big")
            out.append((key, clk))
        return out


# ---------------------------------------------------------------------------
# SelectiveDisclosure
# ---------------------------------------------------------------------------

def authorization_message(requester_did: str, attribute_leaf: bytes, nonce: bytes) -> bytes:
    return b"sd-authz\x00" + requester_did.encode("utf-8") + b"\x00" + attribute_leaf + nonce


class SelectiveDisclosureContract(Contract):
    """Two-layer gated attribute verification.

    Gate 1 (identity): the requester must control an authenticated DID
    whose last authentication falls inside the validity window; failures
    revert before any attribute logic runs. Gate 2 (authorization): the
    holder's signature over (requester, leaf, nonce) and the Merkle proof
    against the holder's committed root must both check out."""

    name = "sd"

    def __init__(self, auth_window: int = 300):
        super().__init__()
        self.auth_window = auth_window

    @staticmethod
    def root_slot(holder_did: str) -> bytes:
        return _slot("sd.root", holder_did)

    @staticmethod
    def nonce_slot(holder_did: str, nonce: bytes) -> bytes:
        return _slot("sd.nonce", holder_did, nonce)

    def _gate_identity(self, ctx: TxContext, did: str, reason: str) -> None:
        controller = ctx.sload(DidContract.controller_slot(did), contract=DidContract.name)
        ctx.require(controller == _account_tag(ctx.caller), reason)
        last_auth = ctx.sload(DidContract.last_auth_slot(did), contract=DidContract.name)
        ctx.require(last_auth is not None, reason)
        age = ctx.clock - int.from_bytes(last_auth, "big")
        ctx.require(0 <= age <= self.auth_window, reason)

    def op_commit_root(self, ctx: TxContext, holder_did: str, root: bytes) -> None:
        ctx.require(len(root) == 32, "invalid root")
        self._gate_identity(ctx, holder_did, "auth required")
        ctx.sstore(self.root_slot(holder_did), root)
        ctx.emit("RootCommitted", keccak256(holder_did.encode("utf-8")) + root)

    def op_verify_attribute(self, ctx: TxContext, requester_did: str, holder_did: str,
                            attribute_leaf: bytes, leaf_index: int, tree_size: int,
                            siblings_blob: bytes, authorization_sig: bytes,
                            nonce: bytes) -> bool:
        ctx.require(len(attribute_leaf) == 32, "bad proof")
        ctx.require(len(nonce) == 8, "bad nonce")
        # gate 1: identity; reverts here keep attribute logic unreachable
        self._gate_identity(ctx, requester_did, "identity gate")
        # gate 2: holder authorization plus proof consistency
        root = ctx.sload(self.root_slot(holder_did))
        holder_key = ctx.sload(DidContract.key_slot(holder_did), contract=DidContract.name)
        nonce_used = ctx.sload(self.nonce_slot(holder_did, nonce)) is not None
        bundle = SignatureBundle(
            public_key=holder_key if holder_key is not None else b"",
            message=authorization_message(requester_did, attribute_leaf, nonce),
            signature=authorization_sig,
        )
        sig_ok = ctx.verify_signature(bundle)
        proof_ok = False
        if len(siblings_blob) % 32 == 0:
            siblings = tuple(siblings_blob[i:i + 32]
                             for i in range(0, len(siblings_blob), 32))
            proof = MerkleProof(leaf_index=leaf_index, siblings=siblings,
                                tree_size=tree_size)
            proof_ok = merkle_verify(root if root is not None else bytes(32),
                                     attribute_leaf, proof, hash_fn=ctx.keccak)
        result = sig_ok and proof_ok and not nonce_used and root is not None
        if result:
            ctx.sstore(self.nonce_slot(holder_did, nonce), int_word(1))
        ctx.emit("AttributeVerified",
                 keccak256(requester_did.encode("utf-8"))
                 + keccak256(holder_did.encode("utf-8"))
                 + attribute_leaf + (b"\x01" if result else b"\x00"))
        return result

    def view_root(self, holder_did: str) -> Optional[bytes]:
        return self._view(self.root_slot(holder_did))


def deploy_standard_contracts(ledger: Ledger, auth_window: int = 300,
                              auth_bucket_seconds: int = 60) -> dict[str, Contract]:
    """Register the six standard contracts on a fresh ledger."""
    contracts = {
        "verifier": VerifierContract(),
        "trading": TradingContract(),
        "carbon": CarbonContract(),
        "accver": AccumulatorVerifierContract(),
        "did": DidContract(bucket_seconds=auth_bucket_seconds),
        "sd": SelectiveDisclosureContract(auth_window=auth_window),
    }
    for contract in contracts.values():
        contract.attach(ledger)
        ledger.register_contract(contract)
    return contracts
