import numpy as np
import pytest
from hypothesis import given, strategies as st

from invnft import (
    CgConfig,
    InvalidArgumentError,
    NumericBreakdownError,
    OpCounter,
    PulseParams,
    QuadratureWeights,
    apply_marchenko_operator,
    complexity_ncg,
    conjugate_gradient,
    ncg_inverse_nft,
    rmse,
    sample_analytic_kernel,
    simpson_weights,
)
from invnft.solver_ncg import hankel_apply


@pytest.fixture(scope="module")
def kernel():
    return sample_analytic_kernel(PulseParams(), 3.0, 150)


@given(n=st.integers(4, 60))
def test_simpson_integrates_cubics(n):
    h = 1.0 / (n - 1)
    x = np.linspace(0, 1, n)
    w = simpson_weights(n, h).weights
    assert w @ (x ** 3 - 2 * x + 1) == pytest.approx(0.25 - 1 + 1, abs=1e-12)


def test_simpson_small_cases():
    np.testing.assert_allclose(simpson_weights(2, 1.0).weights, [0.5, 0.5])
    np.testing.assert_allclose(simpson_weights(3, 3.0).weights, [1, 4, 1])
    np.testing.assert_allclose(simpson_weights(4, 8.0).weights, [3, 9, 9, 3])
    with pytest.raises(InvalidArgumentError):
        simpson_weights(1, 1.0)


def test_hankel_apply_direct(rng):
    F = rng.standard_normal(10) + 1j * rng.standard_normal(10)
    x = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    L = 6
    H = np.array([[F[L - 1 - i - j] if i + j <= L - 1 else 0 for j in range(L)] for i in range(L)])
    np.testing.assert_allclose(hankel_apply(F, x), H @ x, atol=1e-12)
    np.testing.assert_allclose(hankel_apply(F, x, conj=True), np.conj(H) @ x, atol=1e-12)


def dense_operator(kernel, L):
    w = simpson_weights(L, kernel.delta_alpha)
    return np.column_stack([apply_marchenko_operator(kernel, w, e) for e in np.eye(L)])


def test_operator_is_hermitian_positive_definite():
    p = PulseParams(1.0, 0.8)
    k = sample_analytic_kernel(p, 2.0, 40)
    k = type(k)(k.samples * np.exp(0.4j), k.delta_alpha, k.half_window)
    A = dense_operator(k, 25)
    np.testing.assert_allclose(A, A.conj().T, atol=1e-13)
    assert np.linalg.eigvalsh(A).min() >= 1 - 1e-12


def test_operator_rejects_mismatch(kernel):
    with pytest.raises(InvalidArgumentError):
        apply_marchenko_operator(kernel, simpson_weights(5, 0.1), np.ones(4))


def test_cg_exact_in_n_steps(rng):
    n = 8
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    A = M @ M.conj().T + n * np.eye(n)
    b = rng.standard_normal(n) + 0j
    x, k = conjugate_gradient(lambda v: A @ v, b, CgConfig(k_max=n))
    np.testing.assert_allclose(x, np.linalg.solve(A, b), atol=1e-9)
    assert k == n


def test_cg_tolerance_stop():
    x, k = conjugate_gradient(lambda v: 2 * v, np.ones(5), CgConfig(k_max=10, tol=1e-12))
    assert k == 1
    np.testing.assert_allclose(x, 0.5)


def test_cg_breakdown():
    with pytest.raises(NumericBreakdownError):
        conjugate_gradient(lambda v: -v, np.ones(3), CgConfig(k_max=3))


def test_cg_config_validation():
    with pytest.raises(InvalidArgumentError):
        CgConfig(k_max=0)
    with pytest.raises(InvalidArgumentError):
        CgConfig(tol=-1)


def test_matches_direct_solve_when_converged(kernel):
    tr = ncg_inverse_nft(kernel, cfg=CgConfig(k_max=40, tol=1e-14))
    for m in (2, 30, 151):
        L = m
        A = dense_operator(kernel, L)
        s = np.sqrt(simpson_weights(L, kernel.delta_alpha).weights)
        y = np.linalg.solve(A, -s * kernel.samples[L - 1::-1])
        assert abs(tr.values[m - 1] - 2 * y[0] / s[0]) < 1e-10


def test_first_sample(kernel):
    assert ncg_inverse_nft(kernel).values[0] == pytest.approx(-2.0)


def test_stagnation(kernel):
    r = [rmse(ncg_inverse_nft(kernel, cfg=CgConfig(k_max=k)), PulseParams()) for k in (4, 6, 10)]
    assert abs(r[1] - r[2]) / r[2] < 0.01
    assert r[0] >= r[1] * 0.99


def test_oversampled_grid(kernel):
    tr = ncg_inverse_nft(kernel, c=3)
    assert tr.values.size == 51


def test_operation_count_matches_formula(kernel):
    c = OpCounter()
    ncg_inverse_nft(kernel, c=1, cfg=CgConfig(k_max=6), counter=c)
    assert c.model == pytest.approx(complexity_ncg(150, 150, 1, 6), rel=0.01)
    assert c.actual >= c.model


@given(n=st.integers(2, 80), h=st.floats(1e-3, 1.0))
def test_simpson_weights_sum_and_sign(n, h):
    w = simpson_weights(n, h).weights
    assert w.sum() == pytest.approx((n - 1) * h, rel=1e-12)
    assert np.all(w > 0)


def test_operator_inner_product_identities(rng):
    k = sample_analytic_kernel(PulseParams(1.0, 0.9), 3.0, 60)
    k = type(k)(k.samples * np.exp(-1.1j), k.delta_alpha, k.half_window)
    for L in (2, 9, 40, 61):
        w = simpson_weights(L, k.delta_alpha)
        for _ in range(5):
            x = rng.standard_normal(L) + 1j * rng.standard_normal(L)
            y = rng.standard_normal(L) + 1j * rng.standard_normal(L)
            Ax, Ay = apply_marchenko_operator(k, w, x), apply_marchenko_operator(k, w, y)
            lhs, rhs = np.vdot(y, Ax), np.vdot(Ay, x)
            assert abs(lhs - rhs) <= 1e-10 * abs(lhs)
            assert np.vdot(x, Ax).real >= np.vdot(x, x).real * (1 - 1e-12)


def test_fft_matvec_equals_dense():
    k = sample_analytic_kernel(PulseParams(), 3.0, 60)
    F = k.samples
    rng = np.random.default_rng(5)
    for m in range(1, 51):
        L = m
        x = rng.standard_normal(L) + 1j * rng.standard_normal(L)
        w = simpson_weights(L, k.delta_alpha).weights if L > 1 else np.array([k.delta_alpha])
        H = np.array([[F[L - 1 - i - j] if i + j <= L - 1 else 0 for j in range(L)] for i in range(L)])
        s = np.sqrt(w)
        dense = x + s * (H @ (w * (np.conj(H) @ (s * x))))
        fast = apply_marchenko_operator(k, QuadratureWeights(w), x)
        assert np.abs(fast - dense).max() <= 1e-11 * max(1.0, np.abs(dense).max())


def test_times_are_independent_of_c(kernel):
    one = ncg_inverse_nft(kernel, c=1).values
    two = ncg_inverse_nft(kernel, c=2).values
    np.testing.assert_allclose(two, one[::2], rtol=0, atol=1e-14)
