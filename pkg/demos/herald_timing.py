"""
How long does heralding take?
=============================

Every attempt succeeds with the herald efficiency, so the wait is geometric.
Pairs can be heralded in parallel and then joined into a cluster.
"""

# %%
import numpy as np

from resscat import HeraldConfig, expected_attempts
from resscat.herald import run_cluster_trials, summarize_cluster, summarize_pairs

p = 0.138
cfg = HeraldConfig(success_probability=p, seed=7, n_spins=4)
print("expected attempts per pair:", round(expected_attempts(p), 3))
print("P(success within 10 attempts):", round(1 - (1 - p) ** 10, 4))

# %%
for row in (summarize_pairs(cfg, 100_000), summarize_cluster(cfg, 20_000)):
    print({k: round(v, 4) if isinstance(v, float) else v for k, v in row.items()})

# %%
# Larger clusters need more joining links, so the tail grows.
for n in (2, 4, 8, 16):
    s = run_cluster_trials(HeraldConfig(success_probability=p, seed=7, n_spins=n), 20_000)
    print(f"N={n:>2}: median {np.median(s.total_time):.0f} ns, p95 {np.percentile(s.total_time, 95):.0f} ns")
