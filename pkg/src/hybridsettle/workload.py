"""Seeded synthetic workload generation.

Arrival, price, energy, identifier, and script draws each run on their
own substream derived from the master seed, so any experiment can be
reproduced independently of the others. Profile defaults follow a
double-peak day (ramps toward hours 8-10 and 18-21, peak rate four
times the trough) with an LMP-like truncated-normal price shape; they
are declared calibration knobs, not fitted statistics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, fields
from typing import Optional

import numpy as np

from .crypto.keccak import keccak256
from .offchain import SettlementRecord

PARTICIPANT_POOL_SIZE = 128

DEFAULT_HOURLY_RATE = (
    560, 520, 500, 500, 520, 560,
    700, 900, 1400, 1600, 1500, 1200,
    1100, 1050, 1000, 1000, 1100, 1400,
    1800, 2000, 1900, 1600, 1000, 650,
)


@dataclass(frozen=True)
class WorkloadConfig:
    seed: int = 42
    hours: int = 24
    hourly_rate: tuple[float, ...] = DEFAULT_HOURLY_RATE
    price_mean: float = 45.0
    price_sd: float = 15.0
    energy_min: int = 1
    energy_max: int = 50
    regions: tuple[str, ...] = ("north", "south", "east", "west")
    batch_max: int = 64
    rate_ref: float = 600.0
    carbon_price_min: int = 5
    carbon_price_max: int = 100

    def __post_init__(self):
        if len(self.hourly_rate) != 24:
            raise ValueError("hourly_rate needs 24 values")
        if any(r < 0 for r in self.hourly_rate):
            raise ValueError("arrival rates must be >= 0")
        if self.price_sd < 0:
            raise ValueError("price_sd must be >= 0")
        if self.batch_max < 1:
            raise ValueError("batch_max must be >= 1")
        if not 0 < self.energy_min <= self.energy_max:
            raise ValueError("need 0 < energy_min <= energy_max")
        if self.rate_ref <= 0:
            raise ValueError("rate_ref must be positive")
        if not self.regions:
            raise ValueError("need at least one region")
        if not 0 < self.carbon_price_min <= self.carbon_price_max:
            raise ValueError("need 0 < carbon_price_min <= carbon_price_max")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def derive_seed(master: int, purpose: str) -> int:
    """Independent 64-bit substream seed for one named purpose."""
    raw = keccak256(master.to_bytes(8, "big", signed=False) + purpose.encode("utf-8"))
    return int.from_bytes(raw[:8], "big")


def _rng(master: int, purpose: str) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(derive_seed(master, purpose)))


def participant_pool(seed: int, size: int = PARTICIPANT_POOL_SIZE) -> tuple[bytes, ...]:
    """Anonymous 16-byte identifiers derived only from the seed."""
    base = derive_seed(seed, "participants")
    return tuple(keccak256(base.to_bytes(8, "big") + i.to_bytes(4, "big"))[:16]
                 for i in range(size))


def _draw_price(rng: np.random.Generator, mean: float, sd: float) -> int:
    # normal truncated at 1 by redraw
    while True:
        value = int(round(rng.normal(mean, sd)))
        if value >= 1:
            return value


def gen_energy_stream(config: WorkloadConfig) -> list[tuple[int, SettlementRecord]]:
    """Ordered (arrival clock, record) pairs for the configured horizon."""
    arrivals_rng = _rng(config.seed, "arrivals")
    price_rng = _rng(config.seed, "prices")
    energy_rng = _rng(config.seed, "energy")
    id_rng = _rng(config.seed, "ids")
    type_rng = _rng(config.seed, "types")
    region_rng = _rng(config.seed, "regions")
    pool = participant_pool(config.seed)

    stream: list[tuple[int, SettlementRecord]] = []
    for hour in range(config.hours):
        rate = config.hourly_rate[hour % 24]
        count = int(arrivals_rng.poisson(rate))
        if count == 0:
            continue
        times = np.sort(arrivals_rng.integers(hour * 3600, (hour + 1) * 3600,
                                              size=count))
        for t in times:
            record = SettlementRecord(
                timestamp=int(t),
                participant_id=pool[int(id_rng.integers(0, len(pool)))],
                tx_type="buy" if int(type_rng.integers(0, 2)) == 0 else "sell",
                energy_kwh=int(energy_rng.integers(config.energy_min,
                                                   config.energy_max + 1)),
                price_milli=_draw_price(price_rng, config.price_mean, config.price_sd),
                region=config.regions[int(region_rng.integers(0, len(config.regions)))],
            )
            stream.append((int(t), record))
    return stream


def batch_size_for(rate: float, config: WorkloadConfig) -> int:
    """Adaptive batch size: higher arrival rates shrink the window."""
    if rate < 0:
        raise ValueError("rate must be >= 0")
    return max(1, round(config.batch_max / (1.0 + rate / config.rate_ref)))


# ---------------------------------------------------------------------------
# carbon operation script
# ---------------------------------------------------------------------------

VALID = "valid"
OVER_TRANSFER = "over_transfer"
OVER_RETIRE = "over_retire"
UNAUTHORIZED = "unauthorized"

AUTHORITY_ACCOUNT = "authority0"
INTRUDER_ACCOUNT = "intruder0"
FIRM_ACCOUNTS = tuple(f"firm{i}" for i in range(8))

ASSET_TYPES = ("renewable", "efficiency", "forestry", "capture")

# asset totals bounded by allowance-registry scale, in whole tonnes
ASSET_TOTAL_MIN = 10_000
ASSET_TOTAL_MAX = 1_000_000


@dataclass(frozen=True)
class CarbonScriptOp:
    kind: str                  # register | transfer | retire
    validity: str              # valid | over_transfer | over_retire | unauthorized
    asset_id: bytes
    actor: str
    amount: int = 0
    to: str = ""
    owner: str = ""
    asset_type: str = ""
    issuance_year: int = 0
    price: int = 0             # currency/tonne context for the event trail


@dataclass
class _DryRun:
    """Mirror of per-(asset, holder) availability used to aim amounts."""

    entries: dict[tuple[bytes, str], list[int]] = field(default_factory=dict)

    def register(self, asset_id: bytes, owner: str, total: int) -> None:
        self.entries[(asset_id, owner)] = [total, 0]

    def transfer(self, asset_id: bytes, src: str, dst: str, amount: int) -> None:
        self.entries[(asset_id, src)][0] -= amount
        self.entries.setdefault((asset_id, dst), [0, 0])[0] += amount

    def retire(self, asset_id: bytes, holder: str, amount: int) -> None:
        entry = self.entries[(asset_id, holder)]
        entry[0] -= amount
        entry[1] += amount

    def holders_with_credit(self) -> list[tuple[bytes, str, int]]:
        return sorted(((a, h, v[0]) for (a, h), v in self.entries.items() if v[0] > 0),
                      key=lambda item: (item[0], item[1]))

    def all_holders(self) -> list[tuple[bytes, str, int]]:
        return sorted(((a, h, v[0]) for (a, h), v in self.entries.items()),
                      key=lambda item: (item[0], item[1]))


def gen_carbon_script(seed: int, n_assets: int = 6, valid_transfers: int = 60,
                      valid_retires: int = 40,
                      invalid_per_category: int = 10,
                      price_min: int = 5, price_max: int = 100) -> list[CarbonScriptOp]:
    """Registration and lifecycle script ending in scripted violations.

    Every invalid op is constructed to break exactly one gate: excessive
    amounts come from the rightful holder, unauthorized ops carry
    in-range amounts from an actor without the required role or holding.
    """
    rng = random.Random(derive_seed(seed, "carbon"))
    dry = _DryRun()
    ops: list[CarbonScriptOp] = []

    asset_ids = [keccak256(b"carbon-asset\x00" + seed.to_bytes(8, "big")
                           + i.to_bytes(4, "big")) for i in range(n_assets)]
    for i, asset_id in enumerate(asset_ids):
        owner = FIRM_ACCOUNTS[i % len(FIRM_ACCOUNTS)]
        total = rng.randrange(ASSET_TOTAL_MIN, ASSET_TOTAL_MAX + 1)
        ops.append(CarbonScriptOp(
            kind="register", validity=VALID, asset_id=asset_id,
            actor=AUTHORITY_ACCOUNT, amount=total, owner=owner,
            asset_type=ASSET_TYPES[i % len(ASSET_TYPES)],
            issuance_year=2018 + (i % 7),
        ))
        dry.register(asset_id, owner, total)

    for _ in range(valid_transfers):
        pool = dry.holders_with_credit()
        asset_id, holder, available = pool[rng.randrange(len(pool))]
        amount = rng.randrange(1, available + 1)
        dst = FIRM_ACCOUNTS[rng.randrange(len(FIRM_ACCOUNTS))]
        ops.append(CarbonScriptOp(
            kind="transfer", validity=VALID, asset_id=asset_id, actor=holder,
            amount=amount, to=dst, price=rng.randrange(price_min, price_max + 1)))
        dry.transfer(asset_id, holder, dst, amount)

    for _ in range(valid_retires):
        pool = dry.holders_with_credit()
        asset_id, holder, available = pool[rng.randrange(len(pool))]
        amount = rng.randrange(1, available + 1)
        ops.append(CarbonScriptOp(
            kind="retire", validity=VALID, asset_id=asset_id, actor=holder,
            amount=amount))
        dry.retire(asset_id, holder, amount)

    for _ in range(invalid_per_category):
        pool = dry.all_holders()
        asset_id, holder, available = pool[rng.randrange(len(pool))]
        ops.append(CarbonScriptOp(
            kind="transfer", validity=OVER_TRANSFER, asset_id=asset_id, actor=holder,
            amount=available + rng.randrange(1, 1000),
            to=FIRM_ACCOUNTS[rng.randrange(len(FIRM_ACCOUNTS))]))

    for _ in range(invalid_per_category):
        pool = dry.all_holders()
        asset_id, holder, available = pool[rng.randrange(len(pool))]
        ops.append(CarbonScriptOp(
            kind="retire", validity=OVER_RETIRE, asset_id=asset_id, actor=holder,
            amount=available + rng.randrange(1, 1000)))

    for i in range(invalid_per_category):
        if i % 3 == 0:
            # registration without the authority role
            ops.append(CarbonScriptOp(
                kind="register", validity=UNAUTHORIZED,
                asset_id=keccak256(b"rogue-asset\x00" + seed.to_bytes(8, "big")
                                   + i.to_bytes(4, "big")),
                actor=INTRUDER_ACCOUNT, amount=rng.randrange(1000, 10000),
                owner=INTRUDER_ACCOUNT, asset_type="renewable",
                issuance_year=2024))
        else:
            # transfer or retire by an actor holding no entry in the lineage
            pool = dry.holders_with_credit()
            asset_id, holder, available = pool[rng.randrange(len(pool))]
            outsiders = [a for a in FIRM_ACCOUNTS + (INTRUDER_ACCOUNT,)
                         if (asset_id, a) not in dry.entries]
            actor = outsiders[rng.randrange(len(outsiders))] if outsiders else INTRUDER_ACCOUNT
            amount = rng.randrange(1, max(available, 2))
            if i % 3 == 1:
                ops.append(CarbonScriptOp(kind="transfer", validity=UNAUTHORIZED,
                                          asset_id=asset_id, actor=actor, amount=amount,
                                          to=FIRM_ACCOUNTS[0]))
            else:
                ops.append(CarbonScriptOp(kind="retire", validity=UNAUTHORIZED,
                                          asset_id=asset_id, actor=actor, amount=amount))
    return ops
