"""Channel polarization on the binary erasure channel.

Bit-channel erasure probabilities split toward 0 and 1 as the block grows.
Run with ``python demos/01_polarization.py``.
"""
import numpy as np

from polar_wiretap import bhattacharyya_bec

eps = 0.25

# Fraction of bit-channels in each reliability band, per block exponent.
print(f"erasure probability {eps}, capacity {1 - eps}")
print(" n      N   z<1e-3  z>1-1e-3  middle")
for n in range(2, 15, 2):
    z = bhattacharyya_bec(eps, n)
    good = np.mean(z < 1e-3)
    bad = np.mean(z > 1 - 1e-3)
    print(f"{n:2d} {z.size:6d}   {good:.4f}    {bad:.4f}  {1 - good - bad:.4f}")

# The mean of 1 - z is always the capacity, whatever n is.
z = bhattacharyya_bec(eps, 12)
print("mean(1 - z) at n=12:", (1 - z).mean())

# The eavesdropper's channel is worse index by index.
z_w = bhattacharyya_bec(0.5, 12)
print("z_w >= z_m everywhere:", bool(np.all(z_w >= z)))
