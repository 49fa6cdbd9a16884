"""Encode a secret message, send it to the legitimate receiver, decode it.

Run with ``python demos/02_roundtrip.py``.
"""
import numpy as np

from polar_wiretap import (
    ERASED,
    BecChannel,
    RateTargeted,
    assign_frozen_vector,
    decode_bob,
    encode_secret,
    select_index_sets,
    transmit_bec,
)

rng = np.random.default_rng(7)

# A short code: N = 64, main channel erases 10%, eavesdropper 50%.
config = select_index_sets(6, 0.1, 0.5, RateTargeted(0.2))
config = assign_frozen_vector(config, rng)
print("message indices:", config.set_message.tolist())
print("random indices: ", config.set_random.tolist())
print(f"k = {config.k}, rate = {config.rate:.4f}")

message = rng.integers(0, 2, size=config.k, dtype=np.uint8)
record = encode_secret(message, config, rng)

# Bob listens through the main channel.
received = transmit_bec(record.codeword, BecChannel(config.eps_m), rng)
print("received:", "".join("?" if s == ERASED else str(s) for s in received))

result = decode_bob(received, config)
print("message: ", message)
print("decoded: ", result.message)
print("match:", bool(np.array_equal(message, result.message)), "consistent:", result.consistent)

# Two encodings of the same message differ because of the random bits.
again = encode_secret(message, config, rng)
print("codewords differ:", bool((again.codeword != record.codeword).any()))
