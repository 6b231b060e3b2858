"""Kernel dispatch: compiled extension when available, pure Python otherwise.

The active backend is picked once at import time.  Set ``FINOPT_BACKEND``
to ``cython`` or ``python`` to force a choice, or call :func:`set_backend`
at runtime (mainly useful for benchmarking the two implementations against
each other; both produce bitwise-identical results).
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

try:
    from . import _kernels
except ImportError:
    _kernels = None

_IMPLS = {"python": _kernels_py}
if _kernels is not None:
    _IMPLS["cython"] = _kernels


def _initial_backend() -> str:
    name = os.environ.get("FINOPT_BACKEND")
    if name is None:
        return "cython" if _kernels is not None else "python"
    if name not in _IMPLS:
        raise ImportError(
            f"FINOPT_BACKEND={name!r} is not available; "
            f"installed backends: {sorted(_IMPLS)}"
        )
    return name


_backend = _initial_backend()


def available_backends() -> list[str]:
    return sorted(_IMPLS)


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    if name not in _IMPLS:
        raise ValueError(
            f"unknown backend {name!r}; installed backends: {sorted(_IMPLS)}"
        )
    global _backend
    _backend = name


def solve_spd_tridiagonal(
    diag: np.ndarray, off: np.ndarray, rhs: np.ndarray
) -> np.ndarray:
    """Solve the SPD tridiagonal system defined by (diag, off) for rhs.

    Pure function; safe to call from multiple threads as long as nobody
    flips the backend concurrently.
    """
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    off = np.ascontiguousarray(off, dtype=np.float64)
    rhs = np.ascontiguousarray(rhs, dtype=np.float64)
    m = diag.shape[0]
    if m < 1:
        raise ValueError("empty system")
    if off.shape[0] != m - 1:
        raise ValueError(f"off-diagonal has length {off.shape[0]}, expected {m - 1}")
    if rhs.shape[0] != m:
        raise ValueError(f"rhs has length {rhs.shape[0]}, expected {m}")
    return _IMPLS[_backend].solve_spd_tridiagonal(diag, off, rhs)
