"""Named random streams derived from a single experiment seed.

Every source of randomness in a run (env initialization, weight init,
exploration noise, replay sampling) pulls from its own named stream so
that runs are reproducible and adding a new consumer never perturbs the
draws seen by existing ones.
"""

import hashlib

import numpy as np


def stream(seed: int, name: str) -> np.random.Generator:
    """Return a generator for `name`, deterministic in (seed, name)."""
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    key = int.from_bytes(digest[:8], "little")
    return np.random.default_rng(np.random.SeedSequence((seed, key)))
