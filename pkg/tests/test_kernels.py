import numpy as np
import pytest
import scipy.sparse as sp

from _oracles import rk4_taylor_factor

from fwmpb._propagate import (
    USING_COMPILED_KERNEL,
    rk4_propagate,
    rk4_propagate_python,
)


def random_system(seed: int, n: int = 60):
    rng = np.random.default_rng(seed)
    dense = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    dense[rng.random((n, n)) < 0.8] = 0.0
    dense *= 0.05  # keep |lambda| dt inside the stability region
    matrix = sp.csr_matrix(dense)
    y0 = rng.normal(size=n) + 1j * rng.normal(size=n)
    return matrix, y0


def test_python_step_matches_taylor_factor():
    # one RK4 step of y' = z y multiplies y by the quartic Taylor polynomial
    z = -0.3 + 0.7j
    matrix = sp.csr_matrix(np.array([[z]]))
    y = np.array([1.0 + 0.0j])
    dt = 0.37
    out = rk4_propagate_python(matrix, y.copy(), dt, 1)
    assert out[0] == pytest.approx(rk4_taylor_factor(z * dt), rel=1e-15)


def test_python_many_steps_approach_exponential():
    z = -0.8 + 0.2j
    matrix = sp.csr_matrix(np.array([[z]]))
    y = np.array([1.0 + 0.0j])
    out = rk4_propagate_python(matrix, y.copy(), 0.01, 100)
    assert out[0] == pytest.approx(np.exp(z), rel=1e-9)


def test_zero_steps_is_identity():
    matrix, y0 = random_system(0)
    out = rk4_propagate(matrix, y0, 0.1, 0)
    assert np.array_equal(out, y0)


def test_negative_steps_rejected():
    matrix, y0 = random_system(1)
    with pytest.raises(ValueError):
        rk4_propagate(matrix, y0, 0.1, -1)


@pytest.mark.skipif(not USING_COMPILED_KERNEL, reason="compiled kernel not built")
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_compiled_matches_python(seed):
    from fwmpb import _kernels

    matrix, y0 = random_system(seed)
    reference = rk4_propagate_python(matrix, y0.copy(), 0.05, 200)
    compiled = y0.copy()
    _kernels.rk4_propagate(
        matrix.data, matrix.indices.astype(np.int32), matrix.indptr.astype(np.int32),
        compiled, 0.05, 200)
    scale = np.abs(reference).max()
    assert np.abs(compiled - reference).max() < 1e-12 * max(1.0, scale)


@pytest.mark.skipif(not USING_COMPILED_KERNEL, reason="compiled kernel not built")
def test_compiled_rejects_dimension_mismatch():
    from fwmpb import _kernels

    matrix, _ = random_system(3)
    short = np.zeros(10, dtype=np.complex128)
    with pytest.raises(ValueError):
        _kernels.rk4_propagate(
            matrix.data, matrix.indices.astype(np.int32), matrix.indptr.astype(np.int32),
            short, 0.1, 1)


def test_dispatch_env_override(monkeypatch):
    # the selector honors FWMPB_PURE_PYTHON at import time
    import importlib
    import sys

    monkeypatch.setenv("FWMPB_PURE_PYTHON", "1")
    saved = sys.modules.pop("fwmpb._propagate")
    try:
        module = importlib.import_module("fwmpb._propagate")
        assert module.USING_COMPILED_KERNEL is False
        assert module.kernel_backend() == "python"
    finally:
        sys.modules["fwmpb._propagate"] = saved
