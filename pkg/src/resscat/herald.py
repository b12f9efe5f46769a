"""
Monte Carlo timing of heralded spin-spin entanglement.

Each attempt sends one photon; an attempt heralds success with probability
``success_probability * detector_efficiency``. Attempts are spaced by
``attempt_period`` (ns), which must exceed the emitter lifetime.

Random numbers come from NumPy's counter-based Philox generator. Trials are
grouped in blocks of ``BLOCK_SIZE``; block ``b`` draws from
``Philox(SeedSequence(seed, spawn_key=(b,)))`` and always fills the whole
block, so the draws for trial ``i`` depend only on ``(seed, i)``. This holds
no matter how many trials are requested or how blocks are distributed
across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "BLOCK_SIZE",
    "HeraldConfig",
    "PairAttempt",
    "HeraldOutcome",
    "ClusterSamples",
    "expected_attempts",
    "cluster_schedule",
    "sample_attempts",
    "simulate_pair",
    "simulate_cluster",
    "run_pair_trials",
    "run_cluster_trials",
    "summarize_pairs",
    "summarize_cluster",
]

BLOCK_SIZE = 4096


@dataclass(frozen=True)
class HeraldConfig:
    """Herald timing parameters.

    ``attempt_period`` is in ns, ``coherence_time`` in μs.
    """

    success_probability: float
    seed: int
    attempt_period: float = 1.0
    detector_efficiency: float = 1.0
    coherence_time: float = 1.0
    n_spins: int = 2
    max_attempts: int = 10_000

    def __post_init__(self):
        if not 0 < self.success_probability <= 1:
            raise ValueError("success_probability must lie in (0, 1]")
        if not 0 <= self.detector_efficiency <= 1:
            raise ValueError("detector_efficiency must lie in [0, 1]")
        if not self.attempt_period > 0:
            raise ValueError("attempt_period must be positive")
        if not self.coherence_time > 0:
            raise ValueError("coherence_time must be positive")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def attempt_probability(self) -> float:
        return self.success_probability * self.detector_efficiency


class PairAttempt(NamedTuple):
    attempts: int
    time: float
    succeeded: bool


@dataclass(frozen=True)
class HeraldOutcome:
    pair_times: tuple[float, ...]
    total_time: float
    attempts_total: int
    within_coherence: bool
    succeeded: bool


def expected_attempts(p: float) -> float:
    """Mean number of attempts 1/p of a geometric repeat-until-success loop."""
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    return 1 / p


def cluster_schedule(n_spins: int) -> tuple[int, int]:
    """Number of parallel links in the pairing stage and in the joining stage.

    Stage one entangles ⌊N/2⌋ disjoint pairs; stage two joins neighbouring
    pairs (and an odd spin out) through one spin of each, ⌈N/2⌉ - 1 links.
    """
    if n_spins < 2:
        raise ValueError("a cluster needs at least two spins")
    return n_spins // 2, math.ceil(n_spins / 2) - 1


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def sample_attempts(cfg: HeraldConfig, n_trials: int, n_links: int = 1) -> np.ndarray:
    """Attempt counts, shape ``(n_trials, n_links)``.

    Entries above ``cfg.max_attempts`` are clipped to ``max_attempts + 1``
    and mark a failed link.
    """
    if n_trials < 1:
        raise ValueError("n_trials must be positive")
    p = cfg.attempt_probability
    n_blocks = -(-n_trials // BLOCK_SIZE)
    if p == 0:
        return np.full((n_trials, n_links), cfg.max_attempts + 1, dtype=np.int64)
    blocks = [_block_rng(cfg.seed, b).geometric(p, size=(BLOCK_SIZE, n_links)) for b in range(n_blocks)]
    out = np.concatenate(blocks)[:n_trials]
    return np.minimum(out, cfg.max_attempts + 1)


def run_pair_trials(cfg: HeraldConfig, n_trials: int) -> tuple[np.ndarray, np.ndarray]:
    """Attempts per trial and a success mask for independent two-spin links."""
    attempts = sample_attempts(cfg, n_trials, 1)[:, 0]
    return attempts, attempts <= cfg.max_attempts


def simulate_pair(cfg: HeraldConfig, trial: int = 0) -> PairAttempt:
    """One repeat-until-success link; ``time`` is in ns.

    A failed link reports ``max_attempts`` attempts and ``succeeded=False``.
    """
    attempts, ok = run_pair_trials(cfg, trial + 1)
    a = int(attempts[trial]) if ok[trial] else cfg.max_attempts
    return PairAttempt(a, a * cfg.attempt_period, bool(ok[trial]))


@dataclass(frozen=True)
class ClusterSamples:
    attempts: np.ndarray  # (n_trials, n_links), stage-one links first
    n_stage_one: int
    total_time: np.ndarray  # ns, NaN for failed trials
    succeeded: np.ndarray
    within_coherence: np.ndarray
    config: HeraldConfig

    @property
    def pair_times(self) -> np.ndarray:
        return self.attempts * self.config.attempt_period


def run_cluster_trials(cfg: HeraldConfig, n_trials: int) -> ClusterSamples:
    n1, n2 = cluster_schedule(cfg.n_spins)
    attempts = sample_attempts(cfg, n_trials, n1 + n2)
    succeeded = np.all(attempts <= cfg.max_attempts, axis=1)
    times = attempts * cfg.attempt_period
    stage_one = times[:, :n1].max(axis=1)
    stage_two = times[:, n1:].max(axis=1) if n2 else np.zeros(n_trials)
    total = np.where(succeeded, stage_one + stage_two, np.nan)
    within = succeeded & (np.nan_to_num(total, nan=np.inf) <= cfg.coherence_time * 1e3)
    return ClusterSamples(attempts, n1, total, succeeded, within, cfg)


def simulate_cluster(cfg: HeraldConfig, trial: int = 0) -> HeraldOutcome:
    s = run_cluster_trials(cfg, trial + 1)
    ok = bool(s.succeeded[trial])
    return HeraldOutcome(
        pair_times=tuple(float(t) for t in s.pair_times[trial]),
        total_time=float(s.total_time[trial]),
        attempts_total=int(np.minimum(s.attempts[trial], cfg.max_attempts).sum()),
        within_coherence=bool(s.within_coherence[trial]),
        succeeded=ok,
    )


def summarize_pairs(cfg: HeraldConfig, n_trials: int) -> dict:
    attempts, ok = run_pair_trials(cfg, n_trials)
    good = attempts[ok].astype(float)
    n_ok = good.size
    times = good * cfg.attempt_period
    return {
        "stage": "pair",
        "trials": n_trials,
        "success_fraction": n_ok / n_trials,
        "mean_attempts": float(good.mean()) if n_ok else math.nan,
        "stderr_attempts": float(good.std(ddof=1)) / math.sqrt(n_ok) if n_ok > 1 else math.nan,
        "mean_time_ns": float(times.mean()) if n_ok else math.nan,
        "median_time_ns": float(np.median(times)) if n_ok else math.nan,
        "p95_time_ns": float(np.percentile(times, 95)) if n_ok else math.nan,
        "within_coherence_fraction": float(np.mean(ok & (attempts * cfg.attempt_period <= cfg.coherence_time * 1e3))),
    }


def summarize_cluster(cfg: HeraldConfig, n_trials: int) -> dict:
    s = run_cluster_trials(cfg, n_trials)
    n_ok = int(s.succeeded.sum())
    times = s.total_time[s.succeeded]
    per_link = s.attempts[s.succeeded].astype(float).ravel()
    return {
        "stage": "cluster",
        "trials": n_trials,
        "success_fraction": n_ok / n_trials,
        "mean_attempts": float(per_link.mean()) if n_ok else math.nan,
        "stderr_attempts": float(per_link.std(ddof=1)) / math.sqrt(per_link.size) if per_link.size > 1 else math.nan,
        "mean_time_ns": float(times.mean()) if n_ok else math.nan,
        "median_time_ns": float(np.median(times)) if n_ok else math.nan,
        "p95_time_ns": float(np.percentile(times, 95)) if n_ok else math.nan,
        "within_coherence_fraction": float(s.within_coherence.mean()),
    }
