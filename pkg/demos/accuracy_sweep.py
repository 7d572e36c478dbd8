"""
Error against resolution
========================

Sweep delta_alpha, then fit the slope of log RMSE against log delta_alpha.
All four methods come out first order on this pulse, Simpson included;
they differ only in the constant.
"""

import numpy as np

import invnft as nft

grid = (0.04, 0.02, 0.01, 0.005)
sweep = nft.accuracy_sweep(delta_alphas=grid)

print(f"{'delta_alpha':>11} " + " ".join(f"{m.value:>9}" for m in nft.Method))
for d in grid:
    row = {r.method: r.rmse for r in sweep if np.isclose(r.delta_alpha, d)}
    print(f"{d:11.3f} " + " ".join(f"{row[m]:9.2e}" for m in nft.Method))

for m in nft.Method:
    pts = sorted((r.delta_alpha, r.rmse) for r in sweep if r.method is m)
    slope = np.polyfit(*np.log(np.array(pts)).T, 1)[0]
    print(f"{m.value:>4}: RMSE ~ delta_alpha^{slope:.2f}")
