"""Polar transform primitives for binary erasure channels.

Conventions: indices are 0-based, the generator is ``G_N = B_N F^{(x)n}`` with
``B_N`` the bit-reversal permutation, and erasure-channel outputs are
``uint8`` words whose symbols are 0, 1 or :data:`ERASED`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import CapacityError
from .gf2 import as_bits

ERASED = 2

#: Largest block exponent for which dense N x N matrices are built.
DEFAULT_ANALYSIS_LIMIT = 12


@dataclass(frozen=True)
class BecChannel:
    """Binary erasure channel."""

    erasure_prob: float

    def __post_init__(self):
        if not 0.0 <= self.erasure_prob <= 1.0:
            raise ValueError(f"erasure probability must lie in [0, 1], got {self.erasure_prob}")

    @property
    def capacity(self) -> float:
        return 1.0 - self.erasure_prob

    def transmit(self, x, rng: np.random.Generator) -> np.ndarray:
        return transmit_bec(x, self, rng)


def _check_exponent(n: int) -> int:
    n = int(n)
    if n < 0:
        raise ValueError(f"block exponent must be non-negative, got {n}")
    return n


def _exponent_of(length: int) -> int:
    n = length.bit_length() - 1
    if length < 1 or (1 << n) != length:
        raise ValueError(f"block length must be a power of two, got {length}")
    return n


def bhattacharyya_bec(channel: BecChannel | float, n: int) -> np.ndarray:
    """Bhattacharyya parameters of the ``2**n`` bit-channels of a BEC.

    For the BEC these are the exact erasure probabilities of the synthetic
    channels seen by a successive-cancellation decoder, listed in decoding
    order.

    >>> bhattacharyya_bec(0.5, 1).tolist()
    [0.75, 0.25]
    """
    eps = channel.erasure_prob if isinstance(channel, BecChannel) else BecChannel(float(channel)).erasure_prob
    n = _check_exponent(n)
    z = np.array([eps], dtype=float)
    for _ in range(n):
        nxt = np.empty(2 * z.size)
        nxt[0::2] = 2.0 * z - z * z
        nxt[1::2] = z * z
        z = nxt
    return z


def bit_reversal_permutation(n: int) -> np.ndarray:
    """Index ``i`` maps to the integer whose ``n``-bit representation is
    the reverse of that of ``i``."""
    n = _check_exponent(n)
    perm = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        perm = np.concatenate([2 * perm, 2 * perm + 1])
    return perm


def _butterfly(v: np.ndarray) -> np.ndarray:
    # v @ F^{(x)n} over GF(2) along the last axis, in place
    lead = v.shape[:-1]
    size = v.shape[-1]
    h = 1
    while h < size:
        blocks = v.reshape(*lead, size // (2 * h), 2, h)
        blocks[..., 0, :] ^= blocks[..., 1, :]
        h *= 2
    return v


def polar_encode(u, n: int | None = None) -> np.ndarray:
    """Compute ``u B_N F^{(x)n}`` by butterfly stages.

    ``u`` may be a single word or a 2-D batch with one word per row.
    """
    u = np.asarray(u)
    if u.ndim not in (1, 2):
        raise ValueError("u must be a bit vector or a batch of bit vectors")
    if u.size and not np.isin(u, (0, 1)).all():
        raise ValueError("u must hold 0/1 entries")
    length = u.shape[-1]
    if n is None:
        n = _exponent_of(length)
    elif length != 1 << _check_exponent(n):
        raise ValueError(f"expected {1 << n} bits for n={n}, got {length}")
    perm = bit_reversal_permutation(n)
    v = np.ascontiguousarray(u[..., perm], dtype=np.uint8)
    return _butterfly(v)


def generator_matrix(n: int, limit: int = DEFAULT_ANALYSIS_LIMIT) -> np.ndarray:
    """Dense ``N x N`` generator ``B_N F^{(x)n}``; self-inverse over GF(2)."""
    n = _check_exponent(n)
    if n > limit:
        raise CapacityError(
            f"generator matrix for n={n} exceeds the analysis limit n<={limit}; "
            "use polar_encode for large blocks")
    return polar_encode(np.eye(1 << n, dtype=np.uint8), n)


def transmit_bec(x, channel: BecChannel | float, rng: np.random.Generator) -> np.ndarray:
    """Erase each symbol of ``x`` independently with the channel's erasure
    probability.  Works on single words and on batches."""
    eps = channel.erasure_prob if isinstance(channel, BecChannel) else BecChannel(float(channel)).erasure_prob
    y = np.array(x, dtype=np.uint8, copy=True)
    y[rng.random(y.shape) < eps] = ERASED
    return y


def _sc_recurse(beliefs, offset, frozen_mask, frozen_full, u_out, tie_out):
    length = beliefs.shape[1]
    if length == 1:
        b = beliefs[:, 0]
        erased = b == ERASED
        tie_out[:, offset] = erased
        if frozen_mask[offset]:
            u = np.broadcast_to(frozen_full[..., offset], b.shape).astype(np.uint8)
        else:
            # equal likelihoods decide 0
            u = np.where(erased, 0, b).astype(np.uint8)
        u_out[:, offset] = u
        return u[:, None]
    half = length // 2
    left, right = beliefs[:, :half], beliefs[:, half:]
    lost = (left == ERASED) | (right == ERASED)
    upper = np.where(lost, ERASED, left ^ right).astype(np.uint8)
    x_upper = _sc_recurse(upper, offset, frozen_mask, frozen_full, u_out, tie_out)
    from_left = np.where(left == ERASED, ERASED, left ^ x_upper)
    lower = np.where(right == ERASED, from_left, right).astype(np.uint8)
    x_lower = _sc_recurse(lower, offset + half, frozen_mask, frozen_full, u_out, tie_out)
    return np.concatenate([x_upper ^ x_lower, x_lower], axis=1)


def sc_decode_bec_batch(received, frozen_set, frozen_values):
    """Successive-cancellation decoding of a batch of BEC outputs.

    Parameters
    ----------
    received : ndarray, shape (batch, N)
        Channel outputs with symbols in {0, 1, ERASED}.
    frozen_set : sequence of int
        Frozen input indices.
    frozen_values : ndarray, shape (len(frozen_set),) or (batch, len(frozen_set))
        Values of the frozen inputs, shared or per word.

    Returns
    -------
    u_hat : ndarray, shape (batch, N)
    erased : ndarray of bool, shape (batch, N)
        Whether the bit-channel observation at each index was an erasure
        when that index was reached.  At information indices this marks a
        forced decision.
    """
    y = np.asarray(received)
    if y.ndim != 2:
        raise ValueError("received must be a 2-D batch")
    if y.size and not np.isin(y, (0, 1, ERASED)).all():
        raise ValueError("received symbols must be 0, 1 or ERASED")
    batch, length = y.shape
    n = _exponent_of(length)
    frozen_set = np.asarray(frozen_set, dtype=np.int64).reshape(-1)
    if frozen_set.size and (frozen_set.min() < 0 or frozen_set.max() >= length):
        raise ValueError("frozen index out of range")
    if np.unique(frozen_set).size != frozen_set.size:
        raise ValueError("frozen indices must be distinct")
    fv = np.asarray(frozen_values, dtype=np.uint8)
    if fv.shape[-1] != frozen_set.size or fv.ndim not in (1, 2) or (fv.ndim == 2 and fv.shape[0] != batch):
        raise ValueError("frozen_values does not match frozen_set")
    if fv.size and not np.isin(fv, (0, 1)).all():
        raise ValueError("frozen values must be 0 or 1")
    frozen_mask = np.zeros(length, dtype=bool)
    frozen_mask[frozen_set] = True
    frozen_full = np.zeros(fv.shape[:-1] + (length,), dtype=np.uint8)
    frozen_full[..., frozen_set] = fv
    if fv.ndim == 1:
        frozen_full = frozen_full[None, :]
    u_out = np.zeros((batch, length), dtype=np.uint8)
    tie_out = np.zeros((batch, length), dtype=bool)
    if batch:
        beliefs = np.ascontiguousarray(y[:, bit_reversal_permutation(n)], dtype=np.uint8)
        _sc_recurse(beliefs, 0, frozen_mask, frozen_full, u_out, tie_out)
    return u_out, tie_out


def sc_decode_bec(received, frozen_set, frozen_values) -> np.ndarray:
    """Successive-cancellation estimate of ``u`` from one BEC output word.

    Frozen positions are copied from ``frozen_values``; an information bit
    whose bit-channel observation is erased is decided as 0.
    """
    y = np.asarray(received)
    if y.ndim != 1:
        raise ValueError("received must be a single word")
    fv = as_bits(np.asarray(frozen_values).reshape(-1))
    u_hat, _ = sc_decode_bec_batch(y[None, :], frozen_set, fv)
    return u_hat[0]
