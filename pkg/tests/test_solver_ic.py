import numpy as np
import pytest

from invnft import (
    DivergenceError,
    InvalidArgumentError,
    KernelGrid,
    MarchenkoState,
    OpCounter,
    PulseParams,
    complexity_ic,
    dense_glme_solve,
    ic1_inverse_nft,
    ic_inverse_nft,
    ic_iteration,
    nt_inverse_nft,
    rmse,
    sample_analytic_kernel,
)


@pytest.fixture(scope="module")
def kernel():
    return sample_analytic_kernel(PulseParams(), 3.0, 300)


def test_first_sample(kernel):
    assert ic_inverse_nft(kernel).values[0] == pytest.approx(-2.0 / (1 + 0.02 ** 2), rel=1e-10)


def test_fixed_point_is_rectangle_rule_solution():
    k = sample_analytic_kernel(PulseParams(), 2.0, 60)
    m = 41
    L = m
    state = MarchenkoState(np.zeros(L), np.zeros(L), m)
    for _ in range(400):
        state = ic_iteration(k, m, 1, state)
    assert abs(2 * state.B2[0] - dense_glme_solve(k, m)) < 1e-10


def test_converged_equals_nt(kernel):
    ic = ic_inverse_nft(kernel, k_max=60).values
    nt = nt_inverse_nft(kernel).values
    assert np.abs(ic - nt).max() < 1e-8


def test_warm_and_cold_start_agree_when_converged(kernel):
    warm = ic_inverse_nft(kernel, k_max=200).values
    cold = ic_inverse_nft(kernel, k_max=200, warm_start=False).values
    assert np.abs(warm - cold).max() < 1e-6


def test_warm_start_helps_at_low_k(kernel):
    p = PulseParams()
    assert rmse(ic_inverse_nft(kernel, k_max=3), p) < rmse(ic_inverse_nft(kernel, k_max=3, warm_start=False), p)


def test_zero_kernel():
    assert not np.any(ic_inverse_nft(KernelGrid(np.zeros(21), 0.1, 1.0)).values)


def test_divergence_guard():
    d = 0.02
    F = 3 * np.exp(-0.1 * np.arange(301) * d)
    with pytest.raises(DivergenceError) as info:
        ic_inverse_nft(KernelGrid(F, d, 3.0), k_max=50)
    assert info.value.m > 1 and 1 <= info.value.k <= 50


def test_state_length_checked(kernel):
    with pytest.raises(InvalidArgumentError):
        ic_iteration(kernel, 5, 1, MarchenkoState(np.zeros(3), np.zeros(3), 5))
    with pytest.raises(InvalidArgumentError):
        MarchenkoState(np.zeros(3), np.zeros(4), 1)


def test_invalid_k(kernel):
    with pytest.raises(InvalidArgumentError):
        ic_inverse_nft(kernel, k_max=0)


def test_ic1_grid_and_anomaly(kernel):
    p = PulseParams()
    ic1 = ic1_inverse_nft(kernel)
    assert ic1.values.size == 151
    np.testing.assert_allclose(np.diff(ic1.times.t), kernel.delta_alpha)
    assert rmse(ic1, p) < rmse(ic_inverse_nft(kernel, c=2, k_max=3), p)


@pytest.mark.parametrize("c, k_max", [(1, 3), (2, 1), (3, 2)])
def test_operation_count_matches_formula(kernel, c, k_max):
    cnt = OpCounter()
    ic_inverse_nft(kernel, c=c, k_max=k_max, counter=cnt)
    assert cnt.model == pytest.approx(complexity_ic(300 // c, 300, c, k_max), rel=0.01)


def test_warm_and_cold_start_agree_at_twenty_passes(kernel):
    warm = ic_inverse_nft(kernel, k_max=20).values
    cold = ic_inverse_nft(kernel, k_max=20, warm_start=False).values
    gap = float(np.abs(warm - cold).max())
    assert gap <= 1e-8


def test_fixed_point_residual_every_time(pulse):
    k = sample_analytic_kernel(pulse, 3.0, 600)
    dF = k.delta_alpha * k.samples
    F = k.samples
    worst = 0.0
    B1 = np.zeros(0, dtype=complex)
    for m in range(1, 602):
        start = np.zeros(m, dtype=complex)
        start[:B1.size] = B1
        state = MarchenkoState(start, np.zeros(m), m)
        for _ in range(200):
            prev = state.B1
            state = ic_iteration(k, m, 1, state, _dF=dF)
            if np.abs(state.B1 - prev).max() < 1e-13:
                break
        B1, B2 = state.B1, state.B2
        C = np.convolve(dF[:m], B1)[m - 1::-1]
        worst = max(worst, np.abs(B2 + F[:m][::-1] - C).max())
    assert worst <= 1e-8 * np.abs(F).max()


def test_c_refinement_consistency(pulse, kernel_001):
    one = ic_inverse_nft(kernel_001, c=1)
    two = ic_inverse_nft(kernel_001, c=2)
    assert np.abs(one.values[::2] - two.values).max() <= 10 * rmse(one, pulse)


def test_pointwise_agreement_with_nt(pulse, kernel_001):
    ic = ic_inverse_nft(kernel_001)
    nt = nt_inverse_nft(kernel_001)
    assert np.abs(ic.values - nt.values).max() <= 2 * max(rmse(ic, pulse), rmse(nt, pulse))
