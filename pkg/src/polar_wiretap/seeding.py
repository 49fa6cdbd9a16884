"""Reproducible random streams derived from one master seed.

Every stream is ``default_rng(SeedSequence(seed, spawn_key=key))`` for a
fixed integer key, so a stream never depends on how many others were
drawn before it.  Keys used by the package:

``(rate_key(r), FROZEN)``   frozen vector of the code built for rate ``r``
``(rate_key(r), CHANNEL)``  erasure patterns for rate ``r``
``(rate_key(r), PAYLOAD)``  messages and random bits for rate ``r``
"""

from __future__ import annotations

import numpy as np

FROZEN = 0
CHANNEL = 1
PAYLOAD = 2


def rate_key(rate: float) -> int:
    """Integer key for a rate, stable up to 1e-6."""
    return int(round(rate * 1_000_000))


def derive_rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key)))
