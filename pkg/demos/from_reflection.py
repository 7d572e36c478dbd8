"""
Starting from a reflection coefficient
======================================

r(lambda) = 1 / (1 - j lambda) is the spectrum of the same test pulse.
Its kernel is synthesized by quadrature, then handed to NT.
"""

import numpy as np

import invnft as nft

params = nft.PulseParams()
kernel = nft.kernel_from_reflection(lambda lam: 1 / (1 - 1j * lam), T=3.0, n_f=300,
                                    lambda_max=200.0, n_lambda=2**16)
exact = nft.sample_analytic_kernel(params, 3.0, 300)

# The truncated integral returns the midpoint of the jump at y = 0
print(f"F(0) synthesized = {kernel.samples[0].real:.4f}, one-sided limit = {exact.samples[0].real:.4f}")
away = kernel.y >= 0.5
print(f"max |F - exact| for y >= 0.5: {np.abs(kernel.samples - exact.samples)[away].max():.1e}")

u = nft.nt_inverse_nft(kernel)
print(f"RMSE of the recovered pulse: {nft.rmse(u, params):.2e}")
print(f"RMSE from the exact kernel:  {nft.rmse(nft.nt_inverse_nft(exact), params):.2e}")

# %%
# Much of that error is the single sample at the jump.  Replacing it by a
# linear extrapolation from its neighbours restores the one-sided limit; what
# is left comes from Gibbs ringing in the first few samples, which shrinks as
# lambda_max grows.
patched = kernel.samples.copy()
patched[0] = 2 * patched[1] - patched[2]
fixed = nft.KernelGrid(patched, kernel.delta_alpha, kernel.half_window)
print(f"RMSE after patching F(0):    {nft.rmse(nft.nt_inverse_nft(fixed), params):.2e}")
