"""Driven-dissipative model of the three-mode four-wave-mixing cavity.

Everything is expressed in a frame rotating with the drives, so the
parameters are detunings and rates, not absolute frequencies. The
nonlinearity converts two mode-a quanta into a b-c pair and back with
strength g; mode a is coherently driven with amplitude f_a.

Density matrices are vectorized column-major throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .fock import FockSpace, Operator, lowering_op, number_op
from ._propagate import rk4_propagate

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-8
RESIDUAL_TOL = 1e-10

# default RK4 step for rates of order one; shrink it for stiffer parameters
DEFAULT_DT_MAX = 0.01
_CHECK_INTERVAL = 250


class DegenerateSteadyStateError(RuntimeError):
    """Raised when the steady-state solve is singular or inconsistent."""


class StepSizeError(RuntimeError):
    """Raised when fixed-step integration drifts off the physical manifold."""


@dataclass(frozen=True)
class SystemParams:
    """Detunings, coupling, drive and decay rates, all real.

    Rates share one unit; kappa_a = 1 is the natural choice of scale.
    """

    delta_a: float
    delta_b: float
    delta_c: float
    g: float
    f_a: float
    kappa_a: float = 1.0
    kappa_b: float = 1.0
    kappa_c: float = 1.0

    def __post_init__(self) -> None:
        for name in ("delta_a", "delta_b", "delta_c", "g", "f_a",
                     "kappa_a", "kappa_b", "kappa_c"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        for name in ("kappa_a", "kappa_b", "kappa_c"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.f_a < 0:
            raise ValueError("f_a must be nonnegative")

    @classmethod
    def constrained(cls, delta_a: float, delta_b: float, g: float, f_a: float,
                    **kappas: float) -> "SystemParams":
        """Construct with delta_c pinned by the two-photon resonance
        condition delta_b + delta_c = 2 delta_a."""
        return cls(delta_a=delta_a, delta_b=delta_b,
                   delta_c=2.0 * delta_a - delta_b, g=g, f_a=f_a, **kappas)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated state: Hermitian, unit trace, positive up to roundoff."""

    dim: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        rho = self.entries
        if rho.shape != (self.dim, self.dim):
            raise ValueError(f"entries shape {rho.shape} does not match dim {self.dim}")
        if not np.all(np.isfinite(rho)):
            raise ValueError("entries contain nonfinite values")
        herm_defect = np.abs(rho - rho.conj().T).max()
        if herm_defect > HERMITICITY_TOL:
            raise ValueError(f"not Hermitian: max defect {herm_defect:.3e}")
        trace_defect = abs(rho.trace() - 1.0)
        if trace_defect > TRACE_TOL:
            raise ValueError(f"trace defect {trace_defect:.3e}")
        lowest = np.linalg.eigvalsh(rho)[0]
        if lowest < -POSITIVITY_TOL:
            raise ValueError(f"negative eigenvalue {lowest:.3e}")

    @classmethod
    def vacuum(cls, space: FockSpace) -> "DensityMatrix":
        rho = np.zeros((space.dim, space.dim), dtype=np.complex128)
        rho[0, 0] = 1.0
        return cls(space.dim, rho)

    @classmethod
    def from_pure(cls, amplitudes: np.ndarray) -> "DensityMatrix":
        psi = np.asarray(amplitudes, dtype=np.complex128).ravel()
        norm_sq = float(np.vdot(psi, psi).real)
        if norm_sq <= 0:
            raise ValueError("state vector has zero norm")
        return cls(psi.size, np.outer(psi, psi.conj()) / norm_sq)


@dataclass(frozen=True, eq=False)
class Superoperator:
    """Sparse matrix acting on column-major vectorized operators."""

    dim: int
    matrix: sp.spmatrix

    def __post_init__(self) -> None:
        n = self.dim * self.dim
        if self.matrix.shape != (n, n):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match dim^2 = {n}")

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return _unvec(self.matrix @ _vec(rho), self.dim)


def _vec(rho: np.ndarray) -> np.ndarray:
    return rho.ravel(order="F")


def _unvec(v: np.ndarray, dim: int) -> np.ndarray:
    return v.reshape((dim, dim), order="F")


def build_h_eff(params: SystemParams, space: FockSpace) -> Operator:
    """Rotating-frame Hamiltonian: detuning terms, the two-photon
    conversion a^2 b^dag c^dag + h.c., and the coherent drive on a."""
    a = lowering_op(space, "a").entries
    b = lowering_op(space, "b").entries
    c = lowering_op(space, "c").entries
    h = (params.delta_a * number_op(space, "a").entries
         + params.delta_b * number_op(space, "b").entries
         + params.delta_c * number_op(space, "c").entries)
    conversion = a @ a @ b.conj().T @ c.conj().T
    h += params.g * (conversion + conversion.conj().T)
    h += params.f_a * (a + a.conj().T)
    return Operator(space.dim, h)


def build_non_hermitian(params: SystemParams, space: FockSpace) -> Operator:
    """Effective Hamiltonian with -i kappa/2 loss terms on each mode."""
    h = build_h_eff(params, space).entries.copy()
    for mode, kappa in (("a", params.kappa_a), ("b", params.kappa_b), ("c", params.kappa_c)):
        h -= 0.5j * kappa * number_op(space, mode).entries
    return Operator(space.dim, h)


def build_liouvillian(params: SystemParams, space: FockSpace) -> Superoperator:
    """Generator of the master equation with one decay channel per mode."""
    dim = space.dim
    ident = sp.identity(dim, dtype=np.complex128, format="csr")
    h = sp.csr_matrix(build_h_eff(params, space).entries)
    lv = -1j * (sp.kron(ident, h, format="csr") - sp.kron(h.T, ident, format="csr"))
    for mode, kappa in (("a", params.kappa_a), ("b", params.kappa_b), ("c", params.kappa_c)):
        o = sp.csr_matrix(lowering_op(space, mode).entries)
        n_op = (o.conj().T @ o).tocsr()
        lv = lv + kappa * (sp.kron(o.conj(), o, format="csr")
                           - 0.5 * sp.kron(ident, n_op, format="csr")
                           - 0.5 * sp.kron(n_op.T, ident, format="csr"))
    return Superoperator(dim, lv.tocsr())


def _trace_row(dim: int) -> sp.csr_matrix:
    # diagonal of rho sits at vectorized positions i*(dim+1)
    cols = np.arange(dim) * (dim + 1)
    data = np.ones(dim, dtype=np.complex128)
    return sp.csr_matrix((data, (np.zeros(dim, dtype=int), cols)), shape=(1, dim * dim))


def steady_state(liouvillian: Superoperator) -> DensityMatrix:
    """Unique fixed point of the master equation.

    One row of the vectorized system is replaced by the trace constraint
    and the result is solved directly, then polished by one round of
    iterative refinement.
    """
    dim = liouvillian.dim
    n = dim * dim
    lv = liouvillian.matrix.tocsr()
    system = sp.vstack([_trace_row(dim), lv[1:, :]], format="csc")
    rhs = np.zeros(n, dtype=np.complex128)
    rhs[0] = 1.0
    try:
        factor = spla.splu(system)
    except RuntimeError as exc:
        raise DegenerateSteadyStateError(f"steady-state solve is singular: {exc}") from exc
    x = factor.solve(rhs)
    for _ in range(2):
        r = rhs - system @ x
        if np.linalg.norm(r) < 1e-15 * max(1.0, np.linalg.norm(x)):
            break
        x = x + factor.solve(r)
    if not np.all(np.isfinite(x)):
        raise DegenerateSteadyStateError("steady-state solve produced nonfinite entries")
    rho = _unvec(x, dim)
    rho = 0.5 * (rho + rho.conj().T)
    residual = np.linalg.norm(lv @ _vec(rho))
    if residual > RESIDUAL_TOL:
        raise DegenerateSteadyStateError(f"steady-state residual {residual:.3e} exceeds {RESIDUAL_TOL:.1e}")
    return DensityMatrix(dim, rho)


def evolve(liouvillian: Superoperator, rho0: DensityMatrix, t_final: float,
           dt_max: float = DEFAULT_DT_MAX) -> DensityMatrix:
    """Propagate rho0 for t_final with fixed-step fourth-order Runge-Kutta.

    The step is t_final/ceil(t_final/dt_max), so dt_max is an upper bound.
    State invariants are checked periodically; a violation means the step
    outran the stiffest rate and raises StepSizeError.
    """
    if t_final < 0:
        raise ValueError("t_final must be nonnegative")
    if dt_max <= 0:
        raise ValueError("dt_max must be positive")
    if liouvillian.dim != rho0.dim:
        raise ValueError("dimension mismatch between generator and state")
    if t_final == 0:
        return rho0
    dim = rho0.dim
    n_steps = math.ceil(t_final / dt_max)
    dt = t_final / n_steps
    matrix = liouvillian.matrix.tocsr()
    y = _vec(rho0.entries).astype(np.complex128, copy=True)
    done = 0
    while done < n_steps:
        chunk = min(_CHECK_INTERVAL, n_steps - done)
        y = rk4_propagate(matrix, y, dt, chunk)
        done += chunk
        rho = _unvec(y, dim)
        herm_defect = np.abs(rho - rho.conj().T).max()
        trace_defect = abs(rho.trace() - 1.0)
        # comparisons written so that nan counts as a violation
        if not (herm_defect <= HERMITICITY_TOL and trace_defect <= TRACE_TOL):
            raise StepSizeError(
                f"invariant violation at t = {done * dt:.3f} "
                f"(hermiticity {herm_defect:.2e}, trace {trace_defect:.2e}); reduce dt_max")
    try:
        return DensityMatrix(dim, _unvec(y, dim))
    except ValueError as exc:
        raise StepSizeError(f"integration left the state manifold: {exc}") from exc


def trace_distance(rho1: DensityMatrix, rho2: DensityMatrix) -> float:
    """Half the sum of absolute eigenvalues of the difference."""
    if rho1.dim != rho2.dim:
        raise ValueError("dimension mismatch")
    eigs = np.linalg.eigvalsh(rho1.entries - rho2.entries)
    return float(0.5 * np.abs(eigs).sum())
