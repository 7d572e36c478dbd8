"""Inverse nonlinear Fourier transform (focusing NLSE, soliton-free) via the Marchenko equations.

Three solvers share one kernel grid:

* :func:`nt_inverse_nft` - rectangular Nystrom discretization solved by a
  block Trench recursion grown over the output times.
* :func:`ncg_inverse_nft` - Simpson Nystrom discretization, conjugate gradient
  with FFT Hankel products at every output time.
* :func:`ic_inverse_nft` / :func:`ic1_inverse_nft` - fixed-point iteration of
  FFT convolutions with a warm start from the previous time.
"""

from .errors import (
    DivergenceError,
    InvalidArgumentError,
    InvNFTError,
    MethodConstraintError,
    NumericBreakdownError,
    NumericInputError,
    OutOfRangeError,
    SingularSystemError,
    SolverError,
)
from .kernels import (
    KernelGrid,
    PulseParams,
    SolutionTrace,
    TimeGrid,
    analytic_solution,
    kernel_from_reflection,
    sample_analytic_kernel,
    time_grid,
)
from .spectral import OpCounter, conjugate_convolution, fft, ifft, linear_convolution
from .solver_nt import ToeplitzSystem, assemble_toeplitz_system, dense_glme_solve, nt_inverse_nft, trench_solve
from .solver_ncg import (
    CgConfig,
    QuadratureWeights,
    apply_marchenko_operator,
    conjugate_gradient,
    ncg_inverse_nft,
    simpson_weights,
)
from .solver_ic import MarchenkoState, ic1_inverse_nft, ic_inverse_nft, ic_iteration
from .metrics import (
    ExperimentRecord,
    Method,
    complexity,
    complexity_ic,
    complexity_ncg,
    complexity_nt,
    error_profile,
    rmse,
)
from .experiments import (
    accuracy_sweep,
    convergence_study,
    fixed_accuracy_complexity,
    operating_delta_alpha,
    run_method,
    solve,
)

__version__ = "0.1.0"
