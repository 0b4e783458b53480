"""
Who moves first, supply or demand?
==================================

Cross-correlation over a symmetric lag window.  The convention is fixed
throughout the package: r(k) correlates supply at week t with demand at
week t+k, so a positive peak lag means demand follows supply.
"""

import numpy as np

from infodelta import cross_correlation

rng = np.random.default_rng(12)

# A synthetic season: demand echoes supply two weeks later, plus noise.
n = 86
base = rng.normal(size=n + 10)
supply = base[4 : 4 + n]
demand = base[2 : 2 + n] + rng.normal(scale=0.3, size=n)  # demand[t] ~ supply[t-2]

out = cross_correlation(supply, demand, max_lag=6)

print(" lag      r")
for lag, r in zip(out.lags, out.r):
    marker = "  <- peak" if lag == out.peak_lag else ""
    print(f"{lag:>4}  {r:+.3f}{marker}")

print()
print(f"peak lag {out.peak_lag:+d}: demand lags supply by {out.peak_lag} weeks")
print(f"r at lag 0 is {out.r_at(0):+.3f}, peak r is {out.peak_r:+.3f}")
