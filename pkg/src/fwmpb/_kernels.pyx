# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled RK4 stepping over a CSR matrix, the hot loop of evolve()."""

import numpy as np


cdef void _csr_matvec(const double complex[::1] data, const int[::1] indices,
                      const int[::1] indptr, const double complex[::1] x,
                      double complex[::1] out) noexcept nogil:
    cdef Py_ssize_t i, j, n = out.shape[0]
    cdef double complex acc
    for i in range(n):
        acc = 0
        for j in range(indptr[i], indptr[i + 1]):
            acc = acc + data[j] * x[indices[j]]
        out[i] = acc


def rk4_propagate(const double complex[::1] data, const int[::1] indices,
                  const int[::1] indptr, double complex[::1] y,
                  double dt, Py_ssize_t n_steps):
    """Advance y in place by n_steps fixed RK4 steps of dy/dt = A y."""
    cdef Py_ssize_t n = y.shape[0]
    if indptr.shape[0] != n + 1:
        raise ValueError("matrix and vector dimensions disagree")
    k1_arr = np.empty(n, dtype=np.complex128)
    k2_arr = np.empty(n, dtype=np.complex128)
    k3_arr = np.empty(n, dtype=np.complex128)
    k4_arr = np.empty(n, dtype=np.complex128)
    tmp_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] k1 = k1_arr, k2 = k2_arr, k3 = k3_arr, k4 = k4_arr
    cdef double complex[::1] tmp = tmp_arr
    cdef double half = 0.5 * dt, sixth = dt / 6.0
    cdef Py_ssize_t s, i
    with nogil:
        for s in range(n_steps):
            _csr_matvec(data, indices, indptr, y, k1)
            for i in range(n):
                tmp[i] = y[i] + half * k1[i]
            _csr_matvec(data, indices, indptr, tmp, k2)
            for i in range(n):
                tmp[i] = y[i] + half * k2[i]
            _csr_matvec(data, indices, indptr, tmp, k3)
            for i in range(n):
                tmp[i] = y[i] + dt * k3[i]
            _csr_matvec(data, indices, indptr, tmp, k4)
            for i in range(n):
                y[i] = y[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
