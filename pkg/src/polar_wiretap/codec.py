"""Secret encoder and legitimate-receiver decoder."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .construction import WiretapCodeConfig
from .gf2 import as_bits
from .polar import BecChannel, polar_encode, sc_decode_bec_batch, transmit_bec


@dataclass(frozen=True, eq=False)
class EncodingRecord:
    u_word: np.ndarray
    codeword: np.ndarray
    random_bits: np.ndarray


class DecodeResult(NamedTuple):
    message: np.ndarray
    random_bits: np.ndarray
    consistent: bool


def _frozen_vector(config: WiretapCodeConfig) -> np.ndarray:
    if config.frozen_vector is None:
        raise ValueError("config has no frozen vector; call assign_frozen_vector first")
    return config.frozen_vector


def assemble_u(config: WiretapCodeConfig, message, random_bits) -> np.ndarray:
    """Place message, random and frozen bits on their indices.  Accepts single
    words or batches (one word per row)."""
    frozen = _frozen_vector(config)
    message = np.asarray(message, dtype=np.uint8)
    random_bits = np.asarray(random_bits, dtype=np.uint8)
    lead = message.shape[:-1]
    u = np.zeros(lead + (config.N,), dtype=np.uint8)
    u[..., config.set_message] = message
    u[..., config.set_random] = random_bits
    u[..., config.set_frozen] = frozen
    return u


def encode_secret(message, config: WiretapCodeConfig, randomness) -> EncodingRecord:
    """Encode a secret message.

    ``randomness`` is either the explicit random bits for ``set_random`` or a
    ``numpy.random.Generator`` from which they are drawn uniformly.
    """
    _frozen_vector(config)
    message = as_bits(np.asarray(message).reshape(-1), config.k)
    if isinstance(randomness, np.random.Generator):
        random_bits = randomness.integers(0, 2, size=config.set_random.size, dtype=np.uint8)
    else:
        random_bits = as_bits(np.asarray(randomness).reshape(-1), config.set_random.size)
    u = assemble_u(config, message, random_bits)
    return EncodingRecord(u_word=u, codeword=polar_encode(u, config.n), random_bits=random_bits)


def decode_bob(received, config: WiretapCodeConfig) -> DecodeResult:
    """SC-decode a main-channel output.

    ``consistent`` is False when some message or random bit had to be
    decided from an erased bit-channel observation.
    """
    y = np.asarray(received)
    if y.ndim != 1 or y.size != config.N:
        raise ValueError(f"expected a received word of length {config.N}")
    u_hat, erased = sc_decode_bec_batch(y[None, :], config.set_frozen, _frozen_vector(config))
    good = config.set_good_main
    return DecodeResult(message=u_hat[0, config.set_message],
                        random_bits=u_hat[0, config.set_random],
                        consistent=not bool(erased[0, good].any()))


def union_bound(config: WiretapCodeConfig) -> float:
    """Sum of main-channel Bhattacharyya parameters over the decoded indices,
    an upper bound on the block error probability."""
    return float(config.z_main[config.set_good_main].sum())


def block_error_rate(config: WiretapCodeConfig, trials: int, rng: np.random.Generator,
                     batch_size: int = 2048) -> tuple[float, float]:
    """Monte Carlo block error rate over the main channel.

    Every trial draws a fresh uniform message and random vector; the frozen
    vector stays fixed.  Returns ``(p_hat, bound)``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    frozen = _frozen_vector(config)
    channel = BecChannel(config.eps_m)
    good = config.set_good_main
    bound = union_bound(config)
    if good.size == 0:
        return 0.0, bound
    failures = 0
    done = 0
    while done < trials:
        b = min(batch_size, trials - done)
        msg = rng.integers(0, 2, size=(b, config.k), dtype=np.uint8)
        rnd = rng.integers(0, 2, size=(b, config.set_random.size), dtype=np.uint8)
        u = assemble_u(config, msg, rnd)
        y = transmit_bec(polar_encode(u, config.n), channel, rng)
        u_hat, _ = sc_decode_bec_batch(y, config.set_frozen, frozen)
        failures += int((u_hat[:, good] != u[:, good]).any(axis=1).sum())
        done += b
    return failures / trials, bound
