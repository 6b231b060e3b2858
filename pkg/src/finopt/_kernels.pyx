# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled tridiagonal solve for symmetric positive definite systems.

This is the hot kernel of the package: the finite-volume solver, the
adjoint solve, finite-difference sweeps and every optimizer iteration all
funnel through it.  The elimination below performs exactly the same
floating-point operations in exactly the same order as the pure-Python
fallback in ``_kernels_py``, so the two backends are interchangeable bit
for bit.
"""

import numpy as np
from numpy.linalg import LinAlgError


def solve_spd_tridiagonal(double[::1] diag, double[::1] off, double[::1] rhs):
    """Solve A x = rhs where A is symmetric tridiagonal positive definite.

    ``diag`` holds the main diagonal (length m), ``off`` the sub/super
    diagonal (length m - 1).  Raises ``numpy.linalg.LinAlgError`` if a
    nonpositive pivot shows up, which for a symmetric matrix means it is
    not positive definite (or is singular to working precision).
    """
    cdef Py_ssize_t m = diag.shape[0]
    cdef Py_ssize_t i
    cdef double w

    out = np.empty(m, dtype=np.float64)
    piv = np.empty(m, dtype=np.float64)
    cdef double[::1] x = out
    cdef double[::1] dp = piv

    dp[0] = diag[0]
    x[0] = rhs[0]
    for i in range(1, m):
        if not dp[i - 1] > 0.0:
            raise LinAlgError(
                "matrix is not positive definite (pivot %g at row %d)"
                % (dp[i - 1], i - 1)
            )
        w = off[i - 1] / dp[i - 1]
        dp[i] = diag[i] - w * off[i - 1]
        x[i] = rhs[i] - w * x[i - 1]

    if not dp[m - 1] > 0.0:
        raise LinAlgError(
            "matrix is not positive definite (pivot %g at row %d)"
            % (dp[m - 1], m - 1)
        )
    x[m - 1] = x[m - 1] / dp[m - 1]
    for i in range(m - 2, -1, -1):
        x[i] = (x[i] - off[i] * x[i + 1]) / dp[i]
    return out
