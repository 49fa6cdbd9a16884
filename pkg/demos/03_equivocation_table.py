"""Equivocation rate and leakage across message rates.

The eavesdropper's uncertainty grows with the rate until it saturates at the
secrecy capacity, here 0.5 - 0.25 = 0.25.  The full 1000-trial sweep at
N = 1024 takes one to two minutes; lower TRIALS for a quick look.

Run with ``python demos/03_equivocation_table.py``.
"""
from polar_wiretap import leakage_sweep, secrecy_capacity

N_EXP, EPS_M, EPS_W = 10, 0.25, 0.5
TRIALS = 200
rates = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6]

print("secrecy capacity:", secrecy_capacity(EPS_M, EPS_W))
print("  rate     R_e    leak  stderr")
for rep in leakage_sweep(N_EXP, EPS_M, EPS_W, rates, trials=TRIALS, seed=1):
    print(f"{rep.rate:.4f}  {rep.re_mean:.4f}  {rep.leak_mean:.4f}  {rep.re_stderr:.4f}")
