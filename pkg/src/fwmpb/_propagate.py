"""Fixed-step RK4 propagation of dy/dt = A y for sparse A.

A compiled kernel is used when the extension built; otherwise a NumPy
fallback with identical stepping. Set FWMPB_PURE_PYTHON=1 to force the
fallback.
"""

from __future__ import annotations

import os

import numpy as np
import scipy.sparse as sp

if os.environ.get("FWMPB_PURE_PYTHON") == "1":
    _kernels = None
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        _kernels = None

USING_COMPILED_KERNEL = _kernels is not None


def kernel_backend() -> str:
    return "compiled" if USING_COMPILED_KERNEL else "python"


def rk4_propagate_python(matrix: sp.csr_matrix, y: np.ndarray, dt: float,
                         n_steps: int) -> np.ndarray:
    """Reference implementation; also the fallback."""
    half = 0.5 * dt
    sixth = dt / 6.0
    for _ in range(n_steps):
        k1 = matrix @ y
        k2 = matrix @ (y + half * k1)
        k3 = matrix @ (y + half * k2)
        k4 = matrix @ (y + dt * k3)
        y = y + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def rk4_propagate(matrix: sp.csr_matrix, y: np.ndarray, dt: float,
                  n_steps: int) -> np.ndarray:
    """Advance y by n_steps steps of size dt. Returns a new array."""
    if n_steps < 0:
        raise ValueError("n_steps must be nonnegative")
    if _kernels is None:
        return rk4_propagate_python(matrix, y, dt, n_steps)
    out = np.array(y, dtype=np.complex128, copy=True)
    _kernels.rk4_propagate(
        matrix.data.astype(np.complex128, copy=False),
        matrix.indices.astype(np.int32, copy=False),
        matrix.indptr.astype(np.int32, copy=False),
        out, float(dt), int(n_steps))
    return out
