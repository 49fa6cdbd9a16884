"""Block error rate of successive cancellation decoding at the legitimate
receiver, compared with the sum of bit-channel erasure probabilities.

Run with ``python demos/04_reliability.py``.
"""
from dataclasses import replace

import numpy as np

from polar_wiretap import Threshold, assign_frozen_vector, block_error_rate, select_index_sets
from polar_wiretap.codec import union_bound

rng = np.random.default_rng(3)

# Threshold construction: only bit-channels with tiny z carry data, so the
# union bound is small and the decoder almost never fails.
for n in (8, 10, 12):
    config = assign_frozen_vector(select_index_sets(n, 0.25, 0.5, Threshold(0.3)), rng)
    p_hat, bound = block_error_rate(config, 2000, rng)
    print(f"n={n:2d}  |A_m|/N={config.set_good_main.size / config.N:.3f}  p_hat={p_hat:.4f}  bound={bound:.3g}")

# Main-channel noise sweep on a fixed code.
config = assign_frozen_vector(select_index_sets(10, 0.25, 0.5, Threshold(0.3)), rng)
for eps in (0.3, 0.35, 0.4):
    noisier = replace(config, eps_m=eps)
    p_hat, _ = block_error_rate(noisier, 2000, rng)
    print(f"eps_m={eps}: p_hat={p_hat:.4f}  (bound at design point {union_bound(config):.3g})")
