"""
Benchmark harness: reproducible random string sets, timed engine runs and record summaries.
The random generator is documented in doc/random.md; seeds are 64-bit unsigned integers.
"""

import logging
import os
import statistics
import time
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Optional, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from .base_types import StringSet
from .bootstrap import env
from .config import Config
from .errors import InputError, ReconError, check_guard
from .utils import parse_int_list

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """The splitmix64 output function (a bijection on 64-bit integers)."""
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)


def _rotl(x: int, r: int) -> int:
    return ((x << r) | (x >> (64 - r))) & MASK64


class Xoshiro256StarStar:
    """xoshiro256** with its 256-bit state filled from splitmix64(seed)."""

    def __init__(self, seed: int):
        sm = SplitMix64(seed)
        self.s = [sm.next() for _ in range(4)]

    def next(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def bits(self, n: int) -> int:
        """The top n bits (1 <= n <= 64) of the next output."""
        return self.next() >> (64 - n)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) for 1 <= bound <= 2^64, by rejection."""
        threshold = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next()
            if x < threshold:
                return x % bound


def trial_seed(master: int, n: int, m: int, k: int, trial: int) -> int:
    """Seed of one trial, a mix of the master seed and the cell coordinates."""
    h = master & MASK64
    for v in (n, m, k, trial):
        h = mix64(((h ^ v) + GAMMA) & MASK64)
    return h


def gen_random_set(n: int, m: int, seed: int, limit: Optional[int] = None) -> StringSet:
    """
    m distinct uniform binary strings of length n, position 0 being the most significant bit
    of each n-bit draw. Duplicates are redrawn; when m exceeds half of 2^n a partial
    Fisher-Yates shuffle of [0, 2^n) is used instead.
    """
    if not 1 <= n <= 64:
        raise InputError(f"String length must be in [1, 64], got {n}")
    total = 1 << n
    if not 1 <= m <= total:
        raise InputError(f"Can't draw {m} distinct strings of length {n} (at most {total})")
    rng = Xoshiro256StarStar(seed)
    if 2 * m <= total:
        values: dict[int, None] = {}
        while len(values) < m:
            values.setdefault(rng.bits(n))
        drawn = list(values)
    else:
        check_guard("Dense random generation", total, limit or env.config.enumeration_limit)
        swapped: dict[int, int] = {}
        drawn = []
        for i in range(m):
            j = i + rng.below(total - i)
            drawn.append(swapped.get(j, j))
            swapped[j] = swapped.get(i, i)
    words = tuple(tuple((v >> (n - 1 - j)) & 1 for j in range(n)) for v in drawn)
    return StringSet(n, words)


class ExperimentConfig(BaseModel):
    """A grid of (n, m, k) cells, each run for a number of trials on every engine."""

    model_config = ConfigDict(extra="forbid")

    n: list[int]
    m: list[int]
    k: list[int]
    trials: Optional[int] = Field(default=None, ge=1)
    """ Trials per cell; by default 30, or 10 for m >= 500. """
    seed: int = Field(default=0, ge=0, le=MASK64)
    engines: list[str] = Field(default_factory=lambda: ["overlap", "greedy"])
    dataset_per_k: bool = False
    """ Draw a fresh dataset for every k instead of sweeping k over one dataset per trial. """

    @field_validator("n", "m", "k", mode="before")
    @classmethod
    def parse_ranges(cls, v):
        return parse_int_list(v)

    @field_validator("n", "m", "k")
    @classmethod
    def check_positive(cls, v: list[int]) -> list[int]:
        if not v or min(v) < 1:
            raise ValueError("must be a nonempty list of positive integers")
        return v

    @model_validator(mode="after")
    def check_feasible(self) -> "ExperimentConfig":
        if not any(m <= 2**n for n in self.n for m in self.m):
            raise ValueError(
                f"no cell is feasible: m={min(self.m)} distinct strings don't exist "
                f"at n={max(self.n)}"
            )
        if not self.engines:
            raise ValueError("at least one engine is required")
        return self

    def trials_for(self, m: int) -> int:
        if self.trials is not None:
            return self.trials
        return 10 if m >= 500 else 30

    @staticmethod
    def load(path: str | os.PathLike) -> "ExperimentConfig":
        """Reads an experiment file with the same loaders as the main configuration."""
        try:
            raw = Config.load_raw(path)
        except (OSError, ValueError) as e:
            raise InputError(f"Can't load experiment config '{path}': {e}") from e
        try:
            return raw if isinstance(raw, ExperimentConfig) else ExperimentConfig(**raw)
        except (ValidationError, TypeError) as e:
            raise InputError(f"Invalid experiment config '{path}': {e}") from e


@dataclass
class BenchRecord:
    n: int
    m: int
    k: int
    trial: int
    seed: int
    engine: str
    runtime_ms: Optional[float] = None
    extra_strings: Optional[int] = None
    greedy_checks: Optional[int] = None
    normalized_runtime: Optional[float] = None
    noinfo_flag: bool = False
    """ m >= k * 2^k: random sets of this size usually carry no k-way information. """
    error: Optional[str] = field(default=None)


CSV_COLUMNS = (
    "n",
    "m",
    "k",
    "trial",
    "seed",
    "engine",
    "runtime_ms",
    "extra_strings",
    "greedy_checks",
    "normalized_runtime",
    "noinfo_flag",
)
TIMING_COLUMNS = ("runtime_ms", "normalized_runtime")


def csv_row(record: BenchRecord) -> list[str]:
    def fmt(v) -> str:
        if v is None:
            return "-"
        if isinstance(v, bool):
            return "1" if v else "0"
        if isinstance(v, float):
            return f"{v:.6g}"
        return str(v)

    return [fmt(getattr(record, col)) for col in CSV_COLUMNS]


def run_trial(s: StringSet, k: int, engine_name: str, record: BenchRecord) -> BenchRecord:
    """Times one engine on one dataset; failures are logged and leave '-' values."""
    try:
        engine = env.engine(engine_name)
        started = time.perf_counter()
        report = engine.recon(s, k)
        elapsed = (time.perf_counter() - started) * 1000
    except ReconError as e:
        logging.warning(
            "Engine '%s' failed on n=%d m=%d k=%d trial=%d: %s",
            engine_name,
            record.n,
            record.m,
            k,
            record.trial,
            e,
        )
        record.error = str(e)
        return record
    record.runtime_ms = elapsed
    record.normalized_runtime = elapsed / comb(s.n, k - 1)
    record.extra_strings = report.extras
    record.greedy_checks = report.counters.get("greedy_checks")
    return record


def run_experiment(cfg: ExperimentConfig) -> Iterator[BenchRecord]:
    """
    Records in (n, m, k, trial, engine) order. Every trial's dataset comes from its own seed,
    and all engines of a trial share it. Cells with k > n or m > 2^n are skipped.
    """
    engines = sorted(set(cfg.engines))
    for n in sorted(set(cfg.n)):
        for m in sorted(set(cfg.m)):
            if m > 2**n:
                logging.debug("Skipping cells n=%d m=%d: m > 2^n", n, m)
                continue
            for k in sorted(set(cfg.k)):
                if k > n:
                    logging.debug("Skipping cell n=%d m=%d k=%d: k > n", n, m, k)
                    continue
                for trial in range(cfg.trials_for(m)):
                    seed = trial_seed(cfg.seed, n, m, k if cfg.dataset_per_k else 0, trial)
                    s = gen_random_set(n, m, seed)
                    for engine_name in engines:
                        record = BenchRecord(
                            n=n,
                            m=m,
                            k=k,
                            trial=trial,
                            seed=seed,
                            engine=engine_name,
                            noinfo_flag=m >= k * 2**k,
                        )
                        yield run_trial(s, k, engine_name, record)


@dataclass
class CellSummary:
    n: int
    m: int
    k: int
    engine: str
    trials: int
    errors: int
    median_runtime_ms: Optional[float]
    median_normalized_runtime: Optional[float]
    median_extra_strings: Optional[float]


SUMMARY_COLUMNS = (
    "n",
    "m",
    "k",
    "engine",
    "trials",
    "errors",
    "median_runtime_ms",
    "median_normalized_runtime",
    "median_extra_strings",
)


def summarize(records: Iterable[BenchRecord]) -> list[CellSummary]:
    """Per (n, m, k, engine) medians over the successful trials."""
    groups: dict[tuple, list[BenchRecord]] = {}
    for r in records:
        groups.setdefault((r.n, r.m, r.k, r.engine), []).append(r)

    def median(values: list) -> Optional[float]:
        values = [v for v in values if v is not None]
        return statistics.median(values) if values else None

    result = []
    for (n, m, k, engine), group in sorted(groups.items()):
        ok = [r for r in group if r.error is None]
        result.append(
            CellSummary(
                n=n,
                m=m,
                k=k,
                engine=engine,
                trials=len(group),
                errors=len(group) - len(ok),
                median_runtime_ms=median([r.runtime_ms for r in ok]),
                median_normalized_runtime=median([r.normalized_runtime for r in ok]),
                median_extra_strings=median([r.extra_strings for r in ok]),
            )
        )
    return result


def summary_row(summary: CellSummary) -> list[str]:
    def fmt(v: Union[int, float, str, None]) -> str:
        if v is None:
            return "-"
        return f"{v:.6g}" if isinstance(v, float) else str(v)

    return [fmt(getattr(summary, col)) for col in SUMMARY_COLUMNS]
