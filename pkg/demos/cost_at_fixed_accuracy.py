"""
What does RMSE = 2e-3 cost
==========================

Each method is run at the resolution that reaches the target error.  NT
must output every delta_alpha/2, so its cost is fixed; the iterative
methods get cheaper as the requested output step delta_t grows.
"""

import numpy as np

import invnft as nft

target = 2e-3
sweep = nft.accuracy_sweep(delta_alphas=np.geomspace(0.06, 0.005, 12))

for m in nft.Method:
    print(f"{m.value:>4} reaches {target:g} at delta_alpha = {nft.operating_delta_alpha(sweep, target, m):.4f}")

costs = {m: nft.fixed_accuracy_complexity(target, m, sweep, max_delta_t=0.2) for m in nft.Method}
nt = costs[nft.Method.NT][0].formula_ops

# %%
# Cost relative to NT at a handful of output steps
print(f"\n{'delta_t':>8} " + " ".join(f"{m.value:>7}" for m in nft.Method if m is not nft.Method.NT))
for dt in (0.02, 0.05, 0.075, 0.1, 0.15):
    cells = []
    for m in nft.Method:
        if m is nft.Method.NT:
            continue
        r = min(costs[m], key=lambda r: abs(r.delta_t - dt))
        cells.append(f"{r.formula_ops / nt:7.2f}")
    print(f"{dt:8.3f} " + " ".join(cells))
