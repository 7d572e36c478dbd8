import numpy as np
import pytest

from invnft import (
    KernelGrid,
    MethodConstraintError,
    OpCounter,
    PulseParams,
    SingularSystemError,
    ToeplitzSystem,
    analytic_solution,
    assemble_toeplitz_system,
    dense_glme_solve,
    nt_inverse_nft,
    rmse,
    sample_analytic_kernel,
    trench_solve,
)


def random_toeplitz(rng, n):
    col = 0.3 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    row = 0.3 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    col[0] = row[0] = 2.0 + rng.standard_normal()
    return ToeplitzSystem(col, row, rng.standard_normal(n) + 1j * rng.standard_normal(n))


@pytest.fixture(scope="module")
def kernel_005():
    return sample_analytic_kernel(PulseParams(), 3.0, 120)


def test_trench_random_systems(rng):
    for n in (1, 2, 3, 7, 30):
        s = random_toeplitz(rng, n)
        np.testing.assert_allclose(trench_solve(s), np.linalg.solve(s.to_dense(), s.rhs), atol=1e-10)


def test_trench_identity():
    e = np.zeros(6)
    e[0] = 1
    s = ToeplitzSystem(e, e, np.arange(6.0))
    np.testing.assert_allclose(trench_solve(s), np.arange(6.0))


def test_trench_singular_minor():
    # leading 2x2 minor [[1, 1], [1, 1]] is singular
    s = ToeplitzSystem([1, 1, 0], [1, 1, 0.5], [1, 2, 3])
    with pytest.raises(SingularSystemError):
        trench_solve(s)
    with pytest.raises(SingularSystemError):
        trench_solve(ToeplitzSystem([0, 1], [0, 1], [1, 1]))


def test_toeplitz_entry_layout():
    s = ToeplitzSystem([1, 2, 3], [1, 5, 6], [0, 0, 0])
    np.testing.assert_array_equal(s.to_dense(), [[1, 5, 6], [2, 1, 5], [3, 2, 1]])
    assert s.entry(2) == 3 and s.entry(-1) == 5


def test_assembled_system_matches_dense(kernel_005):
    for m in (1, 2, 17, 121):
        x = trench_solve(assemble_toeplitz_system(kernel_005, m))
        assert abs(2 * x[-1] - dense_glme_solve(kernel_005, m)) < 1e-12


def test_nt_matches_dense_every_time(kernel_005):
    u = nt_inverse_nft(kernel_005).values
    dense = np.array([dense_glme_solve(kernel_005, m) for m in range(1, 122)])
    assert np.abs(u - dense).max() <= 1e-8


def test_first_sample(kernel_005):
    # one node: B2 = -F0 / (1 + delta^2 |F0|^2)
    assert nt_inverse_nft(kernel_005).values[0] == pytest.approx(-2.0 / (1 + 0.05 ** 2), rel=1e-13)


def test_zero_kernel():
    k = KernelGrid(np.zeros(41), 0.1, 2.0)
    assert not np.any(nt_inverse_nft(k).values)


def test_first_order_accuracy():
    p = PulseParams()
    errs = [rmse(nt_inverse_nft(sample_analytic_kernel(p, 3.0, n)), p) for n in (150, 300, 600)]
    assert errs[0] / errs[1] == pytest.approx(2, rel=0.1)
    assert errs[1] / errs[2] == pytest.approx(2, rel=0.1)


def test_times(kernel_005):
    tr = nt_inverse_nft(kernel_005)
    np.testing.assert_allclose(tr.times.t, np.arange(121) * 0.025)


def test_rejects_oversampling(kernel_005):
    with pytest.raises(MethodConstraintError):
        nt_inverse_nft(kernel_005, c=2)


@pytest.mark.parametrize("n_f", [100, 200])
def test_operation_count_scale(n_f):
    c = OpCounter()
    nt_inverse_nft(sample_analytic_kernel(PulseParams(), 3.0, n_f), c)
    assert 0.85 <= c.model / (11 * n_f ** 2) <= 1.15
    assert c.model == c.actual


def test_complex_nu():
    # the transform is equivariant under a global phase of the kernel
    p = PulseParams(1.0, 0.6)
    k = sample_analytic_kernel(p, 3.0, 200)
    rot = KernelGrid(k.samples * np.exp(0.7j), k.delta_alpha, k.half_window)
    np.testing.assert_allclose(nt_inverse_nft(rot).values, nt_inverse_nft(k).values * np.exp(0.7j), atol=1e-12)
