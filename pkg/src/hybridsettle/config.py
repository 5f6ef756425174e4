"""Run configuration: plain key=value files, defaults, and the canonical
configuration digest embedded in every output for reproducibility."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .crypto.keccak import keccak256
from .ledger import GasSchedule, load_gas_schedule
from .workload import WorkloadConfig

# Fixed 2048-bit simulation modulus: a trusted-setup artifact generated
# once from two 1024-bit primes and pinned here; the factors were not
# retained. Tiny moduli are permitted in tests only.
DEFAULT_ACC_MODULUS_HEX = (
    "e2e84fbc18633d9cb9650587424dd65f63bf70f707d88345a969471396a75278"
    "395f5124c02fd3b1738b6eab8126b7b9daa1c7c08d94f5cfe1df1632ff9f76c1"
    "d2839df550910c0eb2c32bf38019d97697b586f598546e565e5f15fdf92a2fb3"
    "368d55f1fa33a73796fbbf890d8d1aa3807a465a8095c10a3450a3342516f794"
    "f07aa74316a993a65e8dc97baa89098c1f6490acd7b7040fb2d638585ee33cc9"
    "4161f8ac3a0134c89f6dced27773ef7a50d286dd02b83e187b49c560b7b3e2cb"
    "4f3d679c6e1bdfc9cbaf8389c22aabc5b792d1ac1e9a845bf2fd47ed67dfa98a"
    "cb380849f5ae1b210c4a0317bfc9ac68f9c3f403bc5871f7b508103581c640bf"
)
DEFAULT_ACC_GENERATOR = 3


@dataclass(frozen=True)
class RunConfig:
    workload: WorkloadConfig = field(default_factory=WorkloadConfig)
    gas: GasSchedule = field(default_factory=GasSchedule)
    auth_window: int = 300
    auth_bucket_seconds: int = 60
    acc_modulus: int = int(DEFAULT_ACC_MODULUS_HEX, 16)
    acc_generator: int = DEFAULT_ACC_GENERATOR
    exp1_records: int = 200
    exp1_trials_per_field: int = 30
    exp4_sizes: tuple[int, ...] = (10, 50, 100)
    exp4_reps: int = 20
    exp5_unauthenticated: int = 25
    exp5_authorized: int = 25

    @property
    def seed(self) -> int:
        return self.workload.seed


def parse_kv(text: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"line {lineno}: expected key=value, got {stripped!r}")
        key, value = stripped.split("=", 1)
        pairs[key.strip()] = value.strip()
    return pairs


def _parse_rates(raw: str) -> tuple[float, ...]:
    return tuple(float(v) for v in raw.split(","))


def _parse_strs(raw: str) -> tuple[str, ...]:
    return tuple(v.strip() for v in raw.split(",") if v.strip())


def _parse_ints(raw: str) -> tuple[int, ...]:
    return tuple(int(v) for v in raw.split(","))


def run_config_from_pairs(pairs: dict[str, str],
                          seed_override: Optional[int] = None) -> RunConfig:
    gas_pairs = {k[4:]: v for k, v in pairs.items() if k.startswith("gas.")}
    gas = load_gas_schedule(gas_pairs)

    wl_kwargs: dict = {}
    wl_parsers = {
        "seed": int, "hours": int, "hourly_rate": _parse_rates,
        "price_mean": float, "price_sd": float,
        "energy_min": int, "energy_max": int, "regions": _parse_strs,
        "batch_max": int, "rate_ref": float,
        "carbon_price_min": int, "carbon_price_max": int,
    }
    top_parsers = {
        "auth_window": int, "auth_bucket_seconds": int,
        "acc_modulus_hex": str, "acc_generator": int,
        "exp1_records": int, "exp1_trials_per_field": int,
        "exp4_sizes": _parse_ints, "exp4_reps": int,
        "exp5_unauthenticated": int, "exp5_authorized": int,
    }
    top_kwargs: dict = {}
    for key, raw in pairs.items():
        if key.startswith("gas."):
            continue
        if key.startswith("workload."):
            name = key[len("workload."):]
            if name not in wl_parsers:
                raise ValueError(f"unknown workload key: {name}")
            wl_kwargs[name] = wl_parsers[name](raw)
        elif key in top_parsers:
            top_kwargs[key] = top_parsers[key](raw)
        else:
            raise ValueError(f"unknown configuration key: {key}")

    if "acc_modulus_hex" in top_kwargs:
        top_kwargs["acc_modulus"] = int(top_kwargs.pop("acc_modulus_hex"), 16)
    workload = WorkloadConfig(**wl_kwargs)
    if seed_override is not None:
        workload = replace(workload, seed=seed_override)
    return RunConfig(workload=workload, gas=gas, **top_kwargs)


def load_run_config(path: Optional[str] = None,
                    seed_override: Optional[int] = None) -> RunConfig:
    if path is None:
        cfg = RunConfig()
        if seed_override is not None:
            cfg = replace(cfg, workload=replace(cfg.workload, seed=seed_override))
        return cfg
    with open(path, "r", encoding="utf-8") as fh:
        return run_config_from_pairs(parse_kv(fh.read()), seed_override)


def config_lines(config: RunConfig) -> list[str]:
    """Canonical key=value rendering; basis of the config digest."""
    lines = []
    for name, value in sorted(config.gas.as_dict().items()):
        lines.append(f"gas.{name}={value}")
    wl = config.workload.as_dict()
    for name in sorted(wl):
        value = wl[name]
        if isinstance(value, tuple):
            value = ",".join(str(v) for v in value)
        lines.append(f"workload.{name}={value}")
    lines.append(f"auth_window={config.auth_window}")
    lines.append(f"auth_bucket_seconds={config.auth_bucket_seconds}")
    lines.append(f"acc_modulus_hex={config.acc_modulus:x}")
    lines.append(f"acc_generator={config.acc_generator}")
    lines.append(f"exp1_records={config.exp1_records}")
    lines.append(f"exp1_trials_per_field={config.exp1_trials_per_field}")
    lines.append(f"exp4_sizes={','.join(str(s) for s in config.exp4_sizes)}")
    lines.append(f"exp4_reps={config.exp4_reps}")
    lines.append(f"exp5_unauthenticated={config.exp5_unauthenticated}")
    lines.append(f"exp5_authorized={config.exp5_authorized}")
    return lines


def config_digest(config: RunConfig) -> str:
    return keccak256("\n".join(config_lines(config)).encode("utf-8")).hex()
