"""
Recovering a pulse from its Marchenko kernel
============================================

The kernel F(y) = a nu exp(-a y) belongs to a known single-hump pulse.
Every solver should land on top of the closed form.
"""

import numpy as np

import invnft as nft

params = nft.PulseParams(a=1.0, nu=1.0)
kernel = nft.sample_analytic_kernel(params, T=3.0, n_f=600)   # delta_alpha = 0.01

traces = {
    "NT": nft.nt_inverse_nft(kernel),
    "NCG": nft.ncg_inverse_nft(kernel, cfg=nft.CgConfig(k_max=6)),
    "IC": nft.ic_inverse_nft(kernel, k_max=3),
}

# %%
# A few samples next to the exact signal
t = traces["NT"].t
exact = nft.analytic_solution(params, t)
print(f"{'t':>5} {'exact':>10} " + " ".join(f"{name:>10}" for name in traces))
for i in range(0, t.size, 100):
    row = " ".join(f"{tr.values[i].real:10.5f}" for tr in traces.values())
    print(f"{t[i]:5.2f} {exact[i].real:10.5f} {row}")

# %%
# Root-mean-square deviation over the whole window
for name, tr in traces.items():
    print(f"{name:>4}: RMSE = {nft.rmse(tr, params):.2e}")
