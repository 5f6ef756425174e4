"""Deterministic single-node transaction engine with gas metering.

The simulated on-chain layer: registered contracts execute inside
all-or-nothing transactions against per-contract 32-byte key/value
stores, every operation is metered against an immutable gas schedule,
and a convex capacity penalty scales gas once the day's transaction
count exceeds a configured threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from enum import Enum
from typing import Callable, Iterable, Optional

from .crypto.keccak import keccak256
from .crypto.signing import SignatureBundle, sig_verify
from .encoding import encode_calldata


class TxStatus(Enum):
    SUCCESS = "success"
    REVERTED = "reverted"


@dataclass(frozen=True)
class GasSchedule:
    """Declared measurement instrument; echoed into every report header."""

    tx_base: int = 21000
    calldata_byte: int = 16
    storage_write_new: int = 20000
    storage_write_update: int = 5000
    storage_read: int = 2100
    event_base: int = 750
    event_byte: int = 8
    hash_op: int = 36
    modexp_fixed: int = 2700
    penalty_alpha: float = 0.5
    daily_capacity: int = 20000

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"gas schedule entry {f.name} must be >= 0")

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def with_overrides(self, **overrides) -> "GasSchedule":
        return replace(self, **overrides)


def capacity_penalty(cumulative: int, schedule: GasSchedule) -> float:
    """Convex congestion multiplier; 1.0 at or below the daily capacity."""
    if cumulative < 0:
        raise ValueError("cumulative transaction count must be >= 0")
    cap = schedule.daily_capacity
    if cap <= 0 or cumulative <= cap:
        return 1.0
    excess = (cumulative - cap) / cap
    return 1.0 + schedule.penalty_alpha * excess * excess


Event = tuple[str, str, bytes]  # (contract, event name, payload)


@dataclass
class TxReceipt:
    tx_id: int
    clock: int
    contract: str
    operation: str
    status: TxStatus
    gas_base: int
    gas_used: float
    penalty_multiplier: float
    events: tuple[Event, ...]
    revert_reason: Optional[str] = None
    result: object = None


@dataclass
class ChainState:
    stores: dict[str, dict[bytes, bytes]] = field(default_factory=dict)
    clock: int = 0
    day: int = 0
    cumulative_tx_today: int = 0
    next_tx_id: int = 1
    receipts: list[TxReceipt] = field(default_factory=list)


class Revert(Exception):
    """Raised by contract logic to abort and roll back a transaction."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class TxContext:
    """Per-transaction façade contracts use for storage, events and gas."""

    def __init__(self, ledger: "Ledger", contract: str, caller: str):
        self.ledger = ledger
        self.contract = contract
        self.caller = caller
        self.clock = ledger.state.clock
        self.gas = 0
        self.events: list[Event] = []
        self._journal: list[tuple[str, bytes, Optional[bytes]]] = []

    # -- gas -----------------------------------------------------------
    def charge(self, amount: int) -> None:
        self.gas += amount

    # -- storage -------------------------------------------------------
    def _store(self, contract: str) -> dict[bytes, bytes]:
        return self.ledger.state.stores.setdefault(contract, {})

    def sload(self, key: bytes, contract: Optional[str] = None) -> Optional[bytes]:
        self.charge(self.ledger.schedule.storage_read)
        return self._store(contract or self.contract).get(key)

    def sstore(self, key: bytes, value: bytes) -> None:
        if len(key) != 32 or len(value) != 32:
            raise ValueError("storage keys and values are 32 bytes")
        store = self._store(self.contract)
        old = store.get(key)
        if old is None:
            self.charge(self.ledger.schedule.storage_write_new)
        else:
            self.charge(self.ledger.schedule.storage_write_update)
        self._journal.append((self.contract, key, old))
        store[key] = value

    def rollback(self) -> None:
        for contract, key, old in reversed(self._journal):
            store = self._store(contract)
            if old is None:
                store.pop(key, None)
            else:
                store[key] = old
        self._journal.clear()
        self.events.clear()

    # -- events and metered crypto --------------------------------------
    def emit(self, name: str, payload: bytes) -> None:
        sched = self.ledger.schedule
        self.charge(sched.event_base + sched.event_byte * len(payload))
        self.events.append((self.contract, name, bytes(payload)))

    def keccak(self, data: bytes) -> bytes:
        self.charge(self.ledger.schedule.hash_op)
        return keccak256(data)

    def modexp(self, base: int, exponent: int, modulus: int) -> int:
        self.charge(self.ledger.schedule.modexp_fixed)
        return pow(base, exponent, modulus)

    def verify_signature(self, bundle: SignatureBundle) -> bool:
        # fixed-size public-key operation, metered at the modexp rate
        self.charge(self.ledger.schedule.modexp_fixed)
        return sig_verify(bundle)

    # -- guards ----------------------------------------------------------
    def require(self, condition: bool, reason: str) -> None:
        if not condition:
            raise Revert(reason)

    def require_registered(self, account: str) -> None:
        self.require(self.ledger.is_registered(account), "unauthorized")

    def require_role(self, account: str, role: str) -> None:
        self.require(self.ledger.has_role(account, role), "unauthorized")


class Ledger:
    """Single-writer transaction loop over the registered contracts."""

    def __init__(self, schedule: Optional[GasSchedule] = None):
        self.schedule = schedule or GasSchedule()
        self.state = ChainState()
        self.contracts: dict[str, object] = {}
        self.roles: dict[str, frozenset[str]] = {}

    # -- genesis ---------------------------------------------------------
    def register_contract(self, contract) -> None:
        if contract.name in self.contracts:
            raise ValueError(f"contract {contract.name} already registered")
        self.contracts[contract.name] = contract
        self.state.stores.setdefault(contract.name, {})

    def register_account(self, account: str, *account_roles: str) -> None:
        self.roles[account] = frozenset(account_roles)

    def is_registered(self, account: str) -> bool:
        return account in self.roles

    def has_role(self, account: str, role: str) -> bool:
        return role in self.roles.get(account, frozenset())

    # -- execution ---------------------------------------------------------
    def execute_tx(self, caller: str, contract: str, operation: str,
                   args: tuple = ()) -> TxReceipt:
        state = self.state
        tx_id = state.next_tx_id
        state.next_tx_id += 1
        state.cumulative_tx_today += 1
        multiplier = capacity_penalty(state.cumulative_tx_today, self.schedule)

        ctx = TxContext(self, contract, caller)
        calldata = encode_calldata(args)
        ctx.charge(self.schedule.tx_base + self.schedule.calldata_byte * len(calldata))

        target = self.contracts.get(contract)
        handler = getattr(target, f"op_{operation}", None) if target is not None else None

        status = TxStatus.SUCCESS
        reason: Optional[str] = None
        result = None
        if handler is None:
            status = TxStatus.REVERTED
            reason = "unknown target"
        else:
            try:
                result = handler(ctx, *args)
            except Revert as exc:
                ctx.rollback()
                status = TxStatus.REVERTED
                reason = exc.reason
                result = None

        receipt = TxReceipt(
            tx_id=tx_id,
            clock=state.clock,
            contract=contract,
            operation=operation,
            status=status,
            gas_base=ctx.gas,
            gas_used=ctx.gas * multiplier,
            penalty_multiplier=multiplier,
            events=tuple(ctx.events),
            revert_reason=reason,
            result=result,
        )
        state.receipts.append(receipt)
        return receipt

    # -- clock ---------------------------------------------------------------
    def advance_clock(self, seconds: int) -> None:
        if seconds < 0:
            raise ValueError("clock only advances")
        self.state.clock += seconds
        day = self.state.clock // 86400
        if day > self.state.day:
            self.state.day = day
            self.state.cumulative_tx_today = 0

    # -- inspection ------------------------------------------------------------
    def state_digest(self) -> bytes:
        """Keccak over the canonical sorted serialization of all stores."""
        parts = []
        for name in sorted(self.state.stores):
            parts.append(keccak256(name.encode("utf-8")))
            store = self.state.stores[name]
            for key in sorted(store):
                parts.append(key)
                parts.append(store[key])
        return keccak256(b"".join(parts))

    def export_receipts(self, path, receipts: Optional[Iterable[TxReceipt]] = None) -> None:
        """Line-delimited receipt log: one CSV row per transaction."""
        rows = receipts if receipts is not None else self.state.receipts
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("tx_id,clock,contract,operation,status,gas_used,revert_reason\n")
            for r in rows:
                reason = r.revert_reason or ""
                fh.write(f"{r.tx_id},{r.clock},{r.contract},{r.operation},"
                         f"{r.status.value},{r.gas_used:.6f},{reason}\n")


def load_gas_schedule(pairs: dict[str, str]) -> GasSchedule:
    """Build a schedule from parsed key=value overrides (gas.* keys)."""
    overrides = {}
    valid = {f.name for f in fields(GasSchedule)}
    for key, raw in pairs.items():
        if key not in valid:
            raise ValueError(f"unknown gas schedule key: {key}")
        overrides[key] = float(raw) if key == "penalty_alpha" else int(raw)
    return GasSchedule(**overrides)
