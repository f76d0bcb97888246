"""Seed handling.

Every randomized operation takes an explicit seed; there is no ambient entropy.
"""
from typing import Union

import numpy as np

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator]


def as_seed_sequence(seed: SeedLike) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    if isinstance(seed, np.random.Generator):
        # Draw an entropy word so the caller's generator advances deterministically
        return np.random.SeedSequence(int(seed.integers(0, 2**63)))
    if seed is None:
        raise TypeError("an explicit seed is required")
    return np.random.SeedSequence(int(seed))


def as_generator(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(as_seed_sequence(seed))


def child_seed(seed: SeedLike, index: int) -> np.random.SeedSequence:
    """Seed for the ``index``-th independent stream derived from ``seed``.

    Matches ``SeedSequence(seed).spawn(k)[index]`` so serial and fanned-out
    runs see identical streams.
    """
    parent = as_seed_sequence(seed)
    return np.random.SeedSequence(
        parent.entropy, spawn_key=tuple(parent.spawn_key) + (int(index),),
        pool_size=parent.pool_size,
    )
