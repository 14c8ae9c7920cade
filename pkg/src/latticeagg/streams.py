"""Deterministic random streams keyed by (master seed, purpose).

Every stochastic entry point derives its generator here so that adding or
removing instrumentation (extra measurements, audits, renders) never
perturbs the random numbers consumed by a simulation with the same seed.
"""

import hashlib

import numpy as np


def purpose_key(purpose: str) -> int:
    """Stable 64-bit key for a purpose label."""
    digest = hashlib.sha256(purpose.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def seed_sequence(master_seed: int, purpose: str) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=master_seed,
                                  spawn_key=(purpose_key(purpose),))


def stream(master_seed: int, purpose: str) -> np.random.Generator:
    """Generator for one purpose; independent across purposes and seeds."""
    return np.random.default_rng(seed_sequence(master_seed, purpose))


def kernel_seed(rng: np.random.Generator) -> int:
    """Draw a 32-bit seed for a compiled kernel's internal generator."""
    return int(rng.integers(0, 2**32, dtype=np.uint32))
